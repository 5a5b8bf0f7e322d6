#include <stdio.h>

int collatz_steps(long v) {
    int steps = 0;
    while (v != 1) {
        if (v % 2 == 0) {
            v /= 2;
        } else {
            v = 3 * v + 1;
        }
        steps++;
    }
    return steps;
}

int main(void) {
    printf("%d\n", collatz_steps(27));
    return 0;
}
