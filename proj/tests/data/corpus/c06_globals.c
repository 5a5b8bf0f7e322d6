#include <stdio.h>

int counter_base = 100;
double ratios[4] = {0.5, 0.25, 0.125, 0.0625};
static long offset = 7;

int main(void) {
    double total = 0.0;
    for (int i = 0; i < 4; i++) {
        total += ratios[i];
    }
    printf("%d %ld %.4f\n", counter_base, offset, total);
    return 0;
}
