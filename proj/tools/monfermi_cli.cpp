// SPDX-License-Identifier: MIT
#include <cstdio>

int main() {
    std::puts("monfermi: command line interface under construction");
    return 1;
}
