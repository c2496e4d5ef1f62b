// Command-line front end; subcommands are wired in incrementally.
#include <cstdio>

int main() {
    std::puts("magic_cli: under construction");
    return 0;
}
