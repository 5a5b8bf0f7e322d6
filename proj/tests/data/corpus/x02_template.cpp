#include <iostream>

template <typename T>
T clamp_to(T v, T lo, T hi) {
    if (v < lo) {
        return lo;
    }
    if (v > hi) {
        return hi;
    }
    return v;
}

int main() {
    int acc = 0;
    for (int i = -5; i < 15; i++) {
        acc += clamp_to(i, 0, 9);
    }
    std::cout << acc << " " << clamp_to(2.5, 0.0, 2.0) << "\n";
    return 0;
}
