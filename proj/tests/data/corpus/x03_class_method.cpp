#include <iostream>

struct Accumulator {
    long total = 0;

    void add_squares(int n) {
        for (int i = 1; i <= n; i++) {
            total += (long)i * i;
        }
    }

    long value() const { return total; }
};

int main() {
    Accumulator acc;
    acc.add_squares(30);
    std::cout << acc.value() << "\n";
    return 0;
}
