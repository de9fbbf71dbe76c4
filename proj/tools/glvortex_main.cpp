#include <cstdio>

int main() {
  std::puts("glvortex: CLI under construction");
  return 64;
}
