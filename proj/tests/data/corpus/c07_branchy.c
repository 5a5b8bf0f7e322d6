#include <stdio.h>

int classify(int v) {
    switch (v % 4) {
        case 0: return 10;
        case 1: return 20;
        case 2: return 30;
        default: return 40;
    }
}

int main(void) {
    int acc = 0;
    for (int i = 0; i < 32; i++) {
        if (i % 2 == 0) {
            acc += classify(i);
        } else {
            acc -= i;
        }
    }
    printf("%d\n", acc);
    return 0;
}
