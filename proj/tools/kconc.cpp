#include "cli/commands.hpp"

int main(int argc, char** argv)
{
    return kconc::cli::run_cli(argc, argv);
}
