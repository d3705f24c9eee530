#include <iostream>

#include <CLI11.hpp>

#include "nds/acceptance.hpp"

int main(int argc, char** argv) {
    CLI::App app{"acceptance criteria"};
    std::vector<std::string> only;
    app.add_option("--only", only, "run only the named criterion")->check(CLI::IsMember(nds::criterion_names()));
    CLI11_PARSE(app, argc, argv);
    return nds::run_verify(only, nds::AcceptanceOptions{}, std::cout);
}
