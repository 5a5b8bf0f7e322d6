#include <iostream>
#include <string>

std::string reversed(const std::string& in) {
    std::string out;
    int i = (int)in.size() - 1;
    while (i >= 0) {
        out += in[(size_t)i];
        i--;
    }
    return out;
}

int main() {
    std::cout << reversed("retrieval augmented") << "\n";
    return 0;
}
