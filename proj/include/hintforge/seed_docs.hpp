#pragma once

// Built-in hint documentation in the ingestion format. This is the single
// source the seed knowledge base is built from; `hintforge kb build --seed`
// writes the ingested result to a KB file.

namespace hintforge {

inline const char* seed_hint_docs_json() {
    return R"KBDOC({
  "doc_version": "1",
  "hints": [
    {
      "name": "hot",
      "surface_form": "__attribute__((hot))",
      "site_kinds": ["function"],
      "category": "Optimization control",
      "description": "Marks the function as a hot spot of the program. The compiler optimizes it more aggressively and groups it with other hot functions so the frequently executed code stays close together in the text section.",
      "applicability": "Functions on the critical execution path that run frequently, such as inner computational kernels. Imposes no semantic requirements.",
      "example_annotated": "__attribute__((hot)) double dot(const double *a, const double *b, int n) {\n    double s = 0.0;\n    for (int i = 0; i < n; i++) s += a[i] * b[i];\n    return s;\n}\n",
      "example_plain": "double dot(const double *a, const double *b, int n) {\n    double s = 0.0;\n    for (int i = 0; i < n; i++) s += a[i] * b[i];\n    return s;\n}\n",
      "priority": 1
    },
    {
      "name": "optimize",
      "surface_form": "__attribute__((optimize(<args>)))",
      "site_kinds": ["function"],
      "category": "Optimization control",
      "description": "Compiles the function with the given optimization options, overriding the command-line level for its body. Options are option-name strings such as \"unroll-loops\" or \"O3\"; useful to raise effort on one function, for example to unroll its loops.",
      "applicability": "Functions whose body benefits from a different optimization setting than the rest of the file. Option strings must be options the compiler accepts.",
      "example_annotated": "__attribute__((optimize(\"unroll-loops\"))) void saxpy(double *y, const double *x, double a, int n) {\n    for (int i = 0; i < n; i++) y[i] += a * x[i];\n}\n",
      "example_plain": "void saxpy(double *y, const double *x, double a, int n) {\n    for (int i = 0; i < n; i++) y[i] += a * x[i];\n}\n",
      "priority": 2
    },
    {
      "name": "pure",
      "surface_form": "__attribute__((pure))",
      "site_kinds": ["function"],
      "category": "Function purity",
      "description": "Declares that the function has no observable side effects and that its result depends only on its arguments and on global memory. Repeated calls with the same arguments can be merged, and calls with loop-invariant arguments can be hoisted out of loops.",
      "applicability": "Functions that write no global state and perform no I/O. Reading global memory is allowed. Do not use on functions whose result can change between identical calls.",
      "example_annotated": "__attribute__((pure)) int checksum(const int *data, int n) {\n    int acc = 0;\n    for (int i = 0; i < n; i++) acc ^= data[i] * 31;\n    return acc;\n}\n",
      "example_plain": "int checksum(const int *data, int n) {\n    int acc = 0;\n    for (int i = 0; i < n; i++) acc ^= data[i] * 31;\n    return acc;\n}\n",
      "priority": 3
    },
    {
      "name": "unroll",
      "surface_form": "#pragma GCC unroll <N>",
      "site_kinds": ["statement"],
      "category": "Loop transformation",
      "description": "Unrolls the for, while, or do loop that immediately follows by the given factor. Reduces branch overhead and exposes instruction-level parallelism in short, regular loop bodies.",
      "applicability": "Counted loops with small bodies and no early exits. The pragma line must directly precede the loop statement.",
      "example_annotated": "void scale(double *a, int n) {\n#pragma GCC unroll 8\n    for (int i = 0; i < n; i++) a[i] *= 2.0;\n}\n",
      "example_plain": "void scale(double *a, int n) {\n    for (int i = 0; i < n; i++) a[i] *= 2.0;\n}\n",
      "priority": 4
    },
    {
      "name": "parallel_for",
      "surface_form": "#pragma omp parallel for",
      "site_kinds": ["statement"],
      "category": "Parallelization",
      "description": "Distributes the iterations of the for loop that immediately follows across the available threads. Effective on large independent iteration spaces; inert unless OpenMP is enabled at compile time.",
      "applicability": "Only for loops with no loop-carried dependencies: no iteration may read data another iteration writes. Requires -fopenmp to take effect.",
      "example_annotated": "void add(double *c, const double *a, const double *b, int n) {\n#pragma omp parallel for\n    for (int i = 0; i < n; i++) c[i] = a[i] + b[i];\n}\n",
      "example_plain": "void add(double *c, const double *a, const double *b, int n) {\n    for (int i = 0; i < n; i++) c[i] = a[i] + b[i];\n}\n",
      "priority": 5
    },
    {
      "name": "always_inline",
      "surface_form": "__attribute__((always_inline))",
      "site_kinds": ["function"],
      "category": "Inlining control",
      "description": "Inlines the function into every caller regardless of the usual size heuristics, removing call overhead and enabling cross-call optimization.",
      "applicability": "Small functions called from hot paths. The function must be inlinable: not recursive and not variadic, otherwise compilation fails.",
      "example_annotated": "__attribute__((always_inline)) inline int clamp(int v, int lo, int hi) {\n    return v < lo ? lo : (v > hi ? hi : v);\n}\n",
      "example_plain": "inline int clamp(int v, int lo, int hi) {\n    return v < lo ? lo : (v > hi ? hi : v);\n}\n",
      "priority": 6
    },
    {
      "name": "const",
      "surface_form": "__attribute__((const))",
      "site_kinds": ["function"],
      "category": "Function purity",
      "description": "Stronger form of pure: the result depends only on the argument values, with no reads of global memory and no side effects. Calls become fully subject to common subexpression elimination and loop hoisting.",
      "applicability": "Arithmetic-style functions of their arguments only: no global reads, no pointer dereferences, no I/O. Unsound use can change program behavior.",
      "example_annotated": "__attribute__((const)) int triangle(int n) {\n    return n * (n + 1) / 2;\n}\n",
      "example_plain": "int triangle(int n) {\n    return n * (n + 1) / 2;\n}\n",
      "priority": 7
    },
    {
      "name": "flatten",
      "surface_form": "__attribute__((flatten))",
      "site_kinds": ["function"],
      "category": "Inlining control",
      "description": "Inlines every call inside the annotated function into its body when possible, collapsing the call tree so the whole computation is optimized as one unit.",
      "applicability": "Driver-style functions that orchestrate several small helpers. Can enlarge code substantially; use on one function, not broadly.",
      "example_annotated": "static int square(int v) { return v * v; }\n__attribute__((flatten)) int sum_squares(int n) {\n    int s = 0;\n    for (int i = 0; i < n; i++) s += square(i);\n    return s;\n}\n",
      "example_plain": "static int square(int v) { return v * v; }\nint sum_squares(int n) {\n    int s = 0;\n    for (int i = 0; i < n; i++) s += square(i);\n    return s;\n}\n",
      "priority": 8
    },
    {
      "name": "aligned",
      "surface_form": "__attribute__((aligned(<n>)))",
      "site_kinds": ["global"],
      "category": "Alignment control",
      "description": "Raises the minimum alignment of the global variable to n bytes. Well-aligned arrays let vector loads and stores use their fastest forms and keep hot data from straddling cache lines.",
      "applicability": "Global arrays accessed in vectorizable loops. n must be a power of two; 64 matches a typical cache line.",
      "example_annotated": "__attribute__((aligned(64))) double lattice[1024];\ndouble lattice_sum(void) {\n    double s = 0.0;\n    for (int i = 0; i < 1024; i++) s += lattice[i];\n    return s;\n}\n",
      "example_plain": "double lattice[1024];\ndouble lattice_sum(void) {\n    double s = 0.0;\n    for (int i = 0; i < 1024; i++) s += lattice[i];\n    return s;\n}\n",
      "priority": 9
    },
    {
      "name": "cold",
      "surface_form": "__attribute__((cold))",
      "site_kinds": ["function"],
      "category": "Optimization control",
      "description": "Marks the function as rarely executed, such as error handling or one-time setup. The compiler optimizes it for size, moves it away from hot code, and treats paths leading to it as unlikely.",
      "applicability": "Functions that run rarely relative to the rest of the program. Misplacing it on a function that does substantial work can slow the program down.",
      "example_annotated": "__attribute__((cold)) void report_failure(int code) {\n    volatile int sink = code;\n    (void)sink;\n}\n",
      "example_plain": "void report_failure(int code) {\n    volatile int sink = code;\n    (void)sink;\n}\n",
      "priority": 10
    },
    {
      "name": "malloc",
      "surface_form": "__attribute__((malloc))",
      "site_kinds": ["function"],
      "category": "Aliasing",
      "description": "Promises that the pointer the function returns never aliases any other pointer live at the call and that the pointed-to storage holds no live pointers. Improves alias analysis around allocation wrappers.",
      "applicability": "Allocator-like functions with pointer return types that hand out fresh storage. Meaningless on non-pointer functions.",
      "example_annotated": "#include <stdlib.h>\n__attribute__((malloc)) char *fresh_buffer(int n) {\n    return (char *)malloc((size_t)n);\n}\n",
      "example_plain": "#include <stdlib.h>\nchar *fresh_buffer(int n) {\n    return (char *)malloc((size_t)n);\n}\n",
      "priority": 11
    },
    {
      "name": "parallel_for_collapse",
      "surface_form": "#pragma omp parallel for collapse(<N>)",
      "site_kinds": ["statement"],
      "category": "Parallelization",
      "description": "Parallelizes the following perfectly nested for loops as a single fused iteration space of depth N, exposing more parallelism than distributing the outer loop alone.",
      "applicability": "Only for perfectly nested independent loops: the N loop headers must follow each other directly and iterations must not depend on one another.",
      "example_annotated": "void fill(double *m, int rows, int cols) {\n#pragma omp parallel for collapse(2)\n    for (int i = 0; i < rows; i++)\n        for (int j = 0; j < cols; j++)\n            m[i * cols + j] = (double)(i + j);\n}\n",
      "example_plain": "void fill(double *m, int rows, int cols) {\n    for (int i = 0; i < rows; i++)\n        for (int j = 0; j < cols; j++)\n            m[i * cols + j] = (double)(i + j);\n}\n",
      "priority": 12
    },
    {
      "name": "parallel_for_reduction",
      "surface_form": "#pragma omp parallel for reduction(<op>:<var>)",
      "site_kinds": ["statement"],
      "category": "Parallelization",
      "description": "Parallelizes the following for loop while combining each thread's partial value of the named variable with the given operator, so accumulations stay correct under parallel execution.",
      "applicability": "Only when the loop is clearly a reduction: the variable is updated with one associative operator and not otherwise read. Use solely when safety is evident.",
      "example_annotated": "double total(const double *a, int n) {\n    double sum = 0.0;\n#pragma omp parallel for reduction(+:sum)\n    for (int i = 0; i < n; i++) sum += a[i];\n    return sum;\n}\n",
      "example_plain": "double total(const double *a, int n) {\n    double sum = 0.0;\n    for (int i = 0; i < n; i++) sum += a[i];\n    return sum;\n}\n",
      "priority": 13
    },
    {
      "name": "visibility_hidden",
      "surface_form": "__attribute__((visibility(\"hidden\")))",
      "site_kinds": ["global"],
      "category": "Visibility control",
      "description": "Gives the global symbol hidden dynamic visibility: it cannot be interposed from outside the shared object, so references bind locally and can skip indirection through linkage tables.",
      "applicability": "Globals that are not part of a shared library's public interface. No effect on observable program behavior within the executable.",
      "example_annotated": "__attribute__((visibility(\"hidden\"))) int dispatch_table[256];\nint dispatch_get(int i) { return dispatch_table[i & 255]; }\n",
      "example_plain": "int dispatch_table[256];\nint dispatch_get(int i) { return dispatch_table[i & 255]; }\n",
      "priority": 14
    },
    {
      "name": "used",
      "surface_form": "__attribute__((used))",
      "site_kinds": ["global"],
      "category": "Optimization control",
      "description": "Forces the compiler to emit the global variable even when it appears unreferenced, protecting data consumed through linker magic or inspection tools from being dropped.",
      "applicability": "File-static globals that look dead to the optimizer but must stay in the object file.",
      "example_annotated": "__attribute__((used)) static int build_stamp = 20240401;\n",
      "example_plain": "static int build_stamp = 20240401;\n",
      "priority": 15
    },
    {
      "name": "unused",
      "surface_form": "__attribute__((unused))",
      "site_kinds": ["global"],
      "category": "Optimization control",
      "description": "States that the global variable is possibly unreferenced so the compiler stays quiet about it; carries no code generation effect of its own.",
      "applicability": "Globals kept for configuration or debugging that some builds never touch.",
      "example_annotated": "__attribute__((unused)) static int trace_level = 0;\n",
      "example_plain": "static int trace_level = 0;\n",
      "priority": 16
    },
    {
      "name": "noinline",
      "surface_form": "__attribute__((noinline))",
      "site_kinds": ["function"],
      "category": "Inlining control",
      "description": "Prevents the function from being inlined. Keeps cold or large bodies out of hot callers, shrinking the hot path's code footprint and instruction cache pressure.",
      "applicability": "Large or rarely taken functions whose inlining bloats callers. Combine with cold for error paths.",
      "example_annotated": "__attribute__((noinline)) int parse_fallback(const char *s) {\n    int v = 0;\n    while (*s >= '0' && *s <= '9') { v = v * 10 + (*s - '0'); s++; }\n    return v;\n}\n",
      "example_plain": "int parse_fallback(const char *s) {\n    int v = 0;\n    while (*s >= '0' && *s <= '9') { v = v * 10 + (*s - '0'); s++; }\n    return v;\n}\n",
      "priority": 17
    },
    {
      "name": "packed",
      "surface_form": "__attribute__((packed))",
      "site_kinds": ["global"],
      "category": "Memory layout",
      "description": "Removes padding between structure members so the type occupies the minimum number of bytes.",
      "applicability": "Structure types matching externally fixed layouts.",
      "example_annotated": "struct wire { char tag; int value; } __attribute__((packed));\n",
      "example_plain": "struct wire { char tag; int value; };\n",
      "priority": 100
    },
    {
      "name": "section",
      "surface_form": "__attribute__((section(<args>)))",
      "site_kinds": ["global"],
      "category": "Storage control",
      "description": "Places the symbol in the named linker section instead of the default one.",
      "applicability": "Symbols that must land in a specific section for the linker script or loader.",
      "example_annotated": "__attribute__((section(\".config\"))) int boot_mode = 1;\n",
      "example_plain": "int boot_mode = 1;\n",
      "priority": 100
    },
    {
      "name": "naked",
      "surface_form": "__attribute__((naked))",
      "site_kinds": ["function"],
      "category": "Entry control",
      "description": "Emits the function without prologue or epilogue sequences; the body must consist of assembly.",
      "applicability": "Interrupt stubs and context-switch primitives written in inline assembly.",
      "example_annotated": "",
      "example_plain": "",
      "priority": 100
    },
    {
      "name": "interrupt",
      "surface_form": "__attribute__((interrupt))",
      "site_kinds": ["function"],
      "category": "Entry control",
      "description": "Generates interrupt-handler entry and exit sequences for the function on targets that support it.",
      "applicability": "Interrupt service routines on embedded targets.",
      "example_annotated": "",
      "example_plain": "",
      "priority": 100
    },
    {
      "name": "constructor",
      "surface_form": "__attribute__((constructor))",
      "site_kinds": ["function"],
      "category": "Constructor/Destructor",
      "description": "Arranges for the function to run automatically before main begins.",
      "applicability": "Registration and setup code that must precede main.",
      "example_annotated": "",
      "example_plain": "",
      "priority": 100
    },
    {
      "name": "destructor",
      "surface_form": "__attribute__((destructor))",
      "site_kinds": ["function"],
      "category": "Constructor/Destructor",
      "description": "Arranges for the function to run automatically after main returns or exit is called.",
      "applicability": "Teardown code that must follow main.",
      "example_annotated": "",
      "example_plain": "",
      "priority": 100
    },
    {
      "name": "cdecl",
      "surface_form": "__attribute__((cdecl))",
      "site_kinds": ["function"],
      "category": "Calling convention",
      "description": "Selects the cdecl calling convention for the function on x86 targets.",
      "applicability": "Interfacing with code compiled under a different convention.",
      "example_annotated": "",
      "example_plain": "",
      "priority": 100
    },
    {
      "name": "stdcall",
      "surface_form": "__attribute__((stdcall))",
      "site_kinds": ["function"],
      "category": "Calling convention",
      "description": "Selects the stdcall calling convention, where the callee pops its arguments, on x86 targets.",
      "applicability": "Interfacing with system APIs that require stdcall.",
      "example_annotated": "",
      "example_plain": "",
      "priority": 100
    },
    {
      "name": "warn_unused_result",
      "surface_form": "__attribute__((warn_unused_result))",
      "site_kinds": ["function"],
      "category": "Warning handling",
      "description": "Makes the compiler warn whenever a caller discards the function's return value.",
      "applicability": "Functions whose result encodes an error that must be checked.",
      "example_annotated": "",
      "example_plain": "",
      "priority": 100
    }
  ]
})KBDOC";
}

} // namespace hintforge
