#include "app.hpp"

int main(int argc, char** argv) { return loqc::cli::run_command(argc, argv); }
