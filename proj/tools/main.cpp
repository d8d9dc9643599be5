#include "sepnn/cli.hpp"

int main(int argc, char** argv) { return sepnn::run_cli(argc, argv); }
