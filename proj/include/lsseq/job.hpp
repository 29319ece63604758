#pragma once

#include "lsseq/cochain.hpp"

#include <string>

namespace lsseq {

enum class Emit { human, machine };

struct JobOptions {
    std::string command;  // cohomology, group-cohomology, spectral, ncp, check
    Emit emit = Emit::human;
    Convention convention = Convention::e1;
    unsigned jobs = 1;
};

/// Exit codes of a job.
enum ExitCode : int { kSuccess = 0, kInvariantFailure = 1, kInputError = 2 };

struct JobResult {
    int exit_code = kSuccess;
    std::string report;      // standard output
    std::string diagnostic;  // standard error
};

/// Parses the job document (JSON) and runs the command.  Never throws; all
/// failures are mapped to exit codes with a diagnostic.
JobResult run_job(const std::string& document, const JobOptions& options);

}  // namespace lsseq
