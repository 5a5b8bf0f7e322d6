#include <stdio.h>

int scale_up(int v);

int main(void) {
    int total = 0;
    for (int i = 1; i <= 6; i++) {
        total += scale_up(i);
    }
    printf("%d\n", total);
    return 0;
}

int scale_up(int v) {
    return v * 12 + 5;
}
