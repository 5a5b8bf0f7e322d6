#include <stdio.h>

int churn(int n) {
    int s = 0;
    for (int i = 0; i < n; i++) {
        s += i * i;
    }
    int j = n;
    while (j > 0) {
        s -= j;
        j -= 3;
    }
    int k = 1;
    do {
        s ^= k;
        k <<= 1;
    } while (k < 64);
    return s;
}

int main(void) {
    printf("%d\n", churn(25));
    return 0;
}
