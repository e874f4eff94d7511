// Command-line entry point; subcommands land here as the library grows.
#include <cstdio>

int main(int argc, char** argv) {
    (void)argc;
    (void)argv;
    std::printf("bevocc: command-line interface under construction\n");
    return 2;
}
