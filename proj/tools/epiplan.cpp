#include <cstdio>

int main() {
    std::puts("epiplan: subcommands not wired up yet");
    return 1;
}
