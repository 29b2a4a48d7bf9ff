#include "optstretch/cli.hpp"

int main(int argc, char** argv) { return optstretch::run(argc, argv); }
