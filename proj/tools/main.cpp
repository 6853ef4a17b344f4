#include "pagecurve/app.hpp"

#include <iostream>

int main(int argc, char** argv) { return pagecurve::run_cli(argc, argv, std::cerr); }
