#include <stdio.h>

unsigned mix(unsigned a, unsigned b) {
    return a * 31u + b;
}

unsigned fold(unsigned seed, int rounds) {
    unsigned h = seed;
    for (int r = 0; r < rounds; r++) {
        h = mix(h, (unsigned)r);
    }
    return h;
}

int main(void) {
    printf("%u\n", fold(7u, 20));
    return 0;
}
