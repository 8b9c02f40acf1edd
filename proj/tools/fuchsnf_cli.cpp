#include <fuchsnf/cli.hpp>

int main(int argc, char **argv)
{
    return fuchsnf::cli::run(argc, argv);
}
