#include "limelight/cli.hpp"

int main(int argc, char** argv) { return limelight::run(argc, argv); }
