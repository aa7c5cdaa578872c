#include <cstdio>

int main() {
    std::puts("scn: placeholder");
    return 0;
}
