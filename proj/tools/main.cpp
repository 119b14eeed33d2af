#include "pointrep/cli.hpp"

int main(int argc, char** argv) { return pointrep::cli::run(argc, argv); }
