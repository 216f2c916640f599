#include "negame/cli.hpp"

int main(int argc, char** argv) { return negame::run(argc, argv); }
