#include <stdio.h>

long cube_weight(int n) {
    long acc = 0;
    for (int i = 0; i < n; i++) {
        for (int j = 0; j < n; j++) {
            for (int k = 0; k < n; k++) {
                acc += (long)(i * 7 + j * 3 + k);
            }
        }
    }
    return acc;
}

int main(void) {
    printf("%ld\n", cube_weight(12));
    return 0;
}
