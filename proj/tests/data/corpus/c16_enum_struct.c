#include <stdio.h>

struct Point {
    double x;
    double y;
};

struct Point origin = {3.0, 4.0};

double dist2(struct Point p) {
    return p.x * p.x + p.y * p.y;
}

int main(void) {
    printf("%.1f\n", dist2(origin));
    return 0;
}
