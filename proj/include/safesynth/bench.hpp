#pragma once

// Benchmark family generator and the run harness behind the command line.

#include "safesynth/aiger.hpp"
#include "safesynth/common.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace safesynth::bench
{

/// n-bit counter: u increments, controllable_reset clears it, an error latch
/// is raised once the counter is all ones and then stays raised.
aiger::AigFile gen_cnt( unsigned n );

inline constexpr const char* node_limit_env = "SAFESYNTH_NODE_LIMIT";
/// Node cap from the environment, or `fallback` when unset or unparsable.
std::size_t node_limit_from_env( std::size_t fallback = bdd::ManagerOptions{}.node_limit );

struct RunOptions
{
    double timeout_s = 500.0;
    std::size_t node_limit = bdd::ManagerOptions{}.node_limit;
    bool synthesize = false;
    bool rerun_reach = false;
    /// Keep the controlled circuit text in the record.
    bool emit_aag = false;
    bool restrict_negated = false;
    /// Round trace of the abstraction-refinement variants.
    std::ostream* log = nullptr;
};

struct RunRecord
{
    std::string instance;
    Algorithm algo = Algorithm::C;
    Status status = Status::Timeout;
    double time_ms = 0;
    std::size_t iterations = 0;
    std::size_t rounds = 0;
    std::size_t peak_nodes = 0;
    std::optional< std::size_t > gates;
    /// First-pass gate count when the re-run was requested.
    std::optional< std::size_t > gates_first_pass;
    /// Outcome of model checking the synthesized controller.
    std::optional< bool > verified;
    /// Non-empty for failures that are not resource exhaustion.
    std::string error;
    std::string detail;
    std::optional< std::string > controlled_aag;
};

RunRecord run_instance( const std::string& name, const aiger::AigFile& aig, Algorithm algo,
                        const RunOptions& opts = {} );

std::string csv_header();
std::string csv_row( const RunRecord& r );
/// "ERROR" for failed rows, the status name otherwise.
std::string status_field( const RunRecord& r );

/// Runs every (file, algorithm) pair; rows come back in input order whatever
/// the number of worker threads.
std::vector< RunRecord > run_bench( const std::vector< std::string >& files, const std::vector< Algorithm >& algos,
                                    const RunOptions& opts, unsigned jobs = 1 );

} // namespace safesynth::bench
