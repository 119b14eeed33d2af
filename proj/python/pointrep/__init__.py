"""Reproduction-function estimation for parent/child point processes."""

try:
    from . import _pointrep as _impl
except ImportError:  # in-tree builds place the extension directly on sys.path
    import _pointrep as _impl

CoefficientRow = _impl.CoefficientRow
CoefficientTable = _impl.CoefficientTable
ProcessSample = _impl.ProcessSample
StepFunction = _impl.StepFunction
builtin_signal = _impl.builtin_signal
estimate = _impl.estimate
l2_dist_sq = _impl.l2_dist_sq
mc_validate = _impl.mc_validate
oracle_risk = _impl.oracle_risk
risk_surface = _impl.risk_surface
scan_fasta = _impl.scan_fasta
simulate = _impl.simulate
wavelet_fn = _impl.wavelet_fn

__all__ = [
    "CoefficientRow",
    "CoefficientTable",
    "ProcessSample",
    "StepFunction",
    "builtin_signal",
    "estimate",
    "l2_dist_sq",
    "mc_validate",
    "oracle_risk",
    "risk_surface",
    "scan_fasta",
    "simulate",
    "wavelet_fn",
]
