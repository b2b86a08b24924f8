#include <axoforge/cli.hpp>

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return axoforge::cli::run(std::move(args));
}
