#include "coarsekit/harness.hpp"

int main(int argc, char** argv) { return coarsekit::cli_dispatch(argc, argv); }
