#include <cstdio>
int main(){ return 1; }
