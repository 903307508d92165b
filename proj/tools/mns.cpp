#include <iostream>

#include <mnseries/cli.hpp>

int main(int argc, char **argv)
{
    return mns::run_cli(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
