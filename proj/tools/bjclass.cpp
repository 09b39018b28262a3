#include "bjclass/cli.hpp"

int main(int argc, char** argv) { return bjclass::cli::run(argc, argv); }
