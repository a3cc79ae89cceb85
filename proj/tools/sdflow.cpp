#include "sdflow/cli.hpp"

int main(int argc, char** argv) { return sdflow::cli::dispatch(argc, argv); }
