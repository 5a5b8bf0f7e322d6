#include <stdio.h>

int base = 11, scale = 3, bias = 2;

int apply(int v) {
    return v * 2 + 1;
}

int main(void) {
    int out = base;
    for (int i = 0; i < scale; i++) {
        out = apply(out) + bias;
    }
    printf("%d\n", out);
    return 0;
}
