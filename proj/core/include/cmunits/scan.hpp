#pragma once

#include <string>
#include <vector>

#include "cmunits/field.hpp"

namespace cmunits {

/** Local diagnostics of one split prime. */
struct ScanRecord {
    long p;
    QuadInt pi;
    bool purely_local_pi_bar;   // conjugate-side Fermat-quotient test
    bool purely_local_pi;       // same test seen from the other prime
    bool frobenius_generates;   // residue class of pi generates (O/p)^x / units
};

/**
 * Sweep result over all split primes 5 <= p <= max_p of one field. Records
 * are sorted by p regardless of thread count; counter_examples lists the
 * primes with a FALSE purely-local flag. Identical inputs give identical
 * reports up to timing_ms.
 */
struct ScanReport {
    int d;
    long max_p;
    int threads;
    long timing_ms;
    std::string version;
    std::string pi_convention;
    std::vector<ScanRecord> records;
    std::vector<long> counter_examples;
};

/**
 * Runs the purely-local and Frobenius-generation tests on every split prime
 * up to max_p. Work is dealt in static 1024-candidate chunks so the output
 * is load-independent; each chunk is pure and touches only its own slot.
 */
ScanReport scan_field(int d, long max_p, int threads = 1);

}  // namespace cmunits
