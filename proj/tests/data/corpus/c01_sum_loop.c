#include <stdio.h>

static int table[8] = {3, 1, 4, 1, 5, 9, 2, 6};

int sum_range(const int *data, int n) {
    int s = 0;
    for (int i = 0; i < n; i++) {
        s += data[i];
    }
    return s;
}

int main(void) {
    printf("%d\n", sum_range(table, 8));
    return 0;
}
