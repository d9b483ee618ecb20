#include <benchmark/benchmark.h>

// The distro libbenchmark_main.a ships LTO bytecode from another compiler build.
BENCHMARK_MAIN();
