#include <iostream>
#include <vector>

long weighted_sum(const std::vector<int>& vals) {
    long s = 0;
    for (size_t i = 0; i < vals.size(); i++) {
        s += (long)vals[i] * (long)(i + 1);
    }
    return s;
}

int main() {
    std::vector<int> vals;
    for (int i = 0; i < 40; i++) {
        vals.push_back(i % 7);
    }
    std::cout << weighted_sum(vals) << "\n";
    return 0;
}
