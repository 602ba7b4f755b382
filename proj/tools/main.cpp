#include "qur/export.hpp"

int main(int argc, char** argv) { return qur::cli_main(argc, argv); }
