// placeholder; full CLI added with the cli module
int main() { return 0; }
