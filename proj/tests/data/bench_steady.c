#include <stdio.h>

unsigned spin(unsigned seed, int iters) {
    unsigned h = seed;
    for (int i = 0; i < iters; i++) {
        h = h * 1664525u + 1013904223u;
        h ^= h >> 13;
    }
    return h;
}

int main(void) {
    printf("%u\n", spin(42u, 30000000));
    return 0;
}
