#include <stdio.h>
#include <stdlib.h>

int *make_sequence(int n) {
    int *buf = (int *)malloc((size_t)n * sizeof(int));
    for (int i = 0; i < n; i++) {
        buf[i] = i * i;
    }
    return buf;
}

int main(void) {
    int *seq = make_sequence(10);
    long s = 0;
    for (int i = 0; i < 10; i++) {
        s += seq[i];
    }
    free(seq);
    printf("%ld\n", s);
    return 0;
}
