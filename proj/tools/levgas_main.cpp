#include "levgas/cli.hpp"

int main(int argc, char** argv) {
  return levgas::cli_main(argc, argv);
}
