#include <stdio.h>

double saxpy_sum(double a, int n) {
    double x[64];
    double y[64];
    for (int i = 0; i < n; i++) {
        x[i] = (double)i * 0.5;
        y[i] = (double)(n - i);
    }
    double s = 0.0;
    for (int i = 0; i < n; i++) {
        s += a * x[i] + y[i];
    }
    return s;
}

int main(void) {
    printf("%.3f\n", saxpy_sum(1.5, 64));
    return 0;
}
