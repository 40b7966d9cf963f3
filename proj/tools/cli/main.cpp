#include "app.hpp"

int main(int argc, char** argv) { return contspec::cli::main_entry(argc, argv); }
