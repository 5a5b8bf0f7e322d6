#include <stdio.h>

int first_above(const int *vals, int n, int limit) {
    int i = 0;
    do {
        if (vals[i] > limit) {
            return i;
        }
        i++;
    } while (i < n);
    return -1;
}

int main(void) {
    int vals[6] = {2, 4, 8, 16, 32, 64};
    printf("%d\n", first_above(vals, 6, 10));
    return 0;
}
