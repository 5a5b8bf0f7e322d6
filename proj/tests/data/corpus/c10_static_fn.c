#include <stdio.h>

static unsigned twist(unsigned x) {
    return (x << 3) ^ (x >> 1);
}

int main(void) {
    unsigned acc = 1;
    for (int i = 0; i < 10; i++) {
        acc = twist(acc) + (unsigned)i;
    }
    printf("%u\n", acc);
    return 0;
}
