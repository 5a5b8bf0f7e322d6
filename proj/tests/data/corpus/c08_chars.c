#include <stdio.h>

static const char message[] = "structured context extraction";

int count_vowels(const char *s) {
    int n = 0;
    int i = 0;
    while (s[i] != '\0') {
        char c = s[i];
        if (c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u') {
            n++;
        }
        i++;
    }
    return n;
}

int main(void) {
    printf("%d\n", count_vowels(message));
    return 0;
}
