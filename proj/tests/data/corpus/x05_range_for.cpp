#include <iostream>

int product_mod(const int (&vals)[6], int m) {
    long p = 1;
    for (int v : vals) {
        p = (p * v) % m;
    }
    return (int)p;
}

int main() {
    int vals[6] = {3, 5, 7, 11, 13, 17};
    std::cout << product_mod(vals, 1009) << "\n";
    return 0;
}
