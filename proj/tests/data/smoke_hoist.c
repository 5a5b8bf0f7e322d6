#include <stdio.h>

double blend_weights(int n, int salt) {
    volatile double acc = 0.0;
    double w0 = 0.0, w1 = 0.0, w2 = 0.0, w3 = 0.0;
    for (int i = 1; i <= n; i++) {
        int v = (i * 31 + salt) % 97;
        if (v % 3 == 0) {
            w0 += v * 0.5;
        } else if (v % 3 == 1) {
            w1 += v * 0.25;
        } else {
            w2 += v * 0.125;
        }
    }
    for (int i = 1; i <= n; i++) {
        int v = (i * 17 + salt) % 89;
        w3 += (v & 1) ? v * 0.75 : v * 0.375;
        acc = acc + w3;
    }
    for (int i = 0; i < n; i++) {
        int v = (i * 13 + salt) % 83;
        if (v > 41) {
            w0 -= v * 0.0625;
        } else {
            w1 += v * 0.03125;
        }
        acc = acc + w0 - w1;
    }
    return w0 + w1 + w2 + w3 + acc * 1e-9;
}

int main(void) {
    double total = 0.0;
    for (int k = 0; k < 18000; k++) {
        total += blend_weights(2000, 7);
    }
    printf("%.3f\n", total);
    return 0;
}
