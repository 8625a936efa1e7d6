#include "nilcert/cli.hpp"

int main(int argc, char** argv) { return nilcert::cli::main_entry(argc, argv); }
