#include <algorithm>
#include <array>
#include <iostream>

int median_of(std::array<int, 9> a) {
    std::sort(a.begin(), a.end());
    return a[4];
}

int main() {
    std::array<int, 9> a{9, 2, 7, 4, 5, 6, 3, 8, 1};
    int med = median_of(a);
    long rank = 0;
    for (int i = 0; i < med; i++) {
        rank += i * 2;
    }
    std::cout << med << " " << rank << "\n";
    return 0;
}
