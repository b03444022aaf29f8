#ifndef PMFD_ERRORS_HPP
#define PMFD_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace pmfd {

/// Base class for all error conditions raised by the library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// --- data loading / preprocessing ---

class MissingColumnError : public Error {
public:
    explicit MissingColumnError(const std::string& column)
        : Error("missing column: " + column), column(column) {}
    std::string column;
};

class NonNumericCellError : public Error {
public:
    NonNumericCellError(std::size_t row, const std::string& column)
        : Error("non-numeric cell at row " + std::to_string(row) + ", column " + column),
          row(row), column(column) {}
    std::size_t row;
    std::string column;
};

class EmptyFileError : public Error {
public:
    explicit EmptyFileError(const std::string& path) : Error("empty file: " + path) {}
};

class EmptySeriesError : public Error {
public:
    EmptySeriesError() : Error("time series is empty") {}
};

class InvalidSpecError : public Error {
public:
    explicit InvalidSpecError(const std::string& what) : Error("invalid synth spec: " + what) {}
};

class EmptyInputError : public Error {
public:
    explicit EmptyInputError(const std::string& what) : Error("empty input: " + what) {}
};

// --- detection ---

class WindowTooLongError : public Error {
public:
    WindowTooLongError(std::size_t window_len, std::size_t series_len)
        : Error("window length " + std::to_string(window_len) +
                " exceeds series length " + std::to_string(series_len)) {}
};

class InsufficientPoolError : public Error {
public:
    explicit InsufficientPoolError(const std::string& what)
        : Error("insufficient pool: " + what) {}
};

// --- event log extraction ---

class TooFewPointsError : public Error {
public:
    TooFewPointsError(std::size_t n, int k)
        : Error("k-means needs at least k=" + std::to_string(k) + " points, got " +
                std::to_string(n)) {}
};

class DimensionMismatchError : public Error {
public:
    DimensionMismatchError(std::size_t got, std::size_t expected)
        : Error("dimension mismatch: got " + std::to_string(got) + ", expected " +
                std::to_string(expected)) {}
};

class WindowTooShortError : public Error {
public:
    explicit WindowTooShortError(std::size_t n)
        : Error("window too short for event extraction: " + std::to_string(n) + " samples") {}
};

class NoTransitionsError : public Error {
public:
    NoTransitionsError() : Error("window maps to a single state, no transitions") {}
};

class AllWindowsDegenerateError : public Error {
public:
    AllWindowsDegenerateError() : Error("no window produced any state transition") {}
};

// --- petri nets ---

class NetStructureError : public Error {
public:
    explicit NetStructureError(const std::string& what) : Error("net structure: " + what) {}
};

class NotEnabledError : public Error {
public:
    explicit NotEnabledError(const std::string& transition)
        : Error("transition not enabled: " + transition) {}
};

class IsolatedNodeError : public Error {
public:
    explicit IsolatedNodeError(const std::string& node)
        : Error("node has no arcs: " + node) {}
};

// --- discovery ---

class EmptyLogError : public Error {
public:
    EmptyLogError() : Error("event log has no cases") {}
};

// --- stochastic enhancement / simulation ---

class EmptyTimesError : public Error {
public:
    EmptyTimesError() : Error("no state times to build a histogram from") {}
};

class MissingDistributionError : public Error {
public:
    explicit MissingDistributionError(int state)
        : Error("no state time distribution for state " + std::to_string(state)), state(state) {}
    int state;
};

class TraceOverflowError : public Error {
public:
    explicit TraceOverflowError(std::size_t max_events)
        : Error("simulation exceeded " + std::to_string(max_events) + " events") {}
};

class DeadlockError : public Error {
public:
    explicit DeadlockError(const std::string& marking)
        : Error("simulation deadlocked at marking " + marking) {}
};

class ZeroLengthWindowError : public Error {
public:
    ZeroLengthWindowError() : Error("all sampled durations round to zero samples") {}
};

class TooManyFailuresError : public Error {
public:
    TooManyFailuresError(std::size_t failed, std::size_t requested)
        : Error("simulation pool: " + std::to_string(failed) + " of " +
                std::to_string(requested) + " runs failed") {}
};

// --- conformance ---

class UnsoundModelError : public Error {
public:
    explicit UnsoundModelError(const std::string& what)
        : Error("model unusable for conformance: " + what) {}
};

class SearchBudgetExceededError : public Error {
public:
    explicit SearchBudgetExceededError(std::size_t budget)
        : Error("alignment search exceeded " + std::to_string(budget) + " nodes") {}
};

class AlignTimeoutError : public Error {
public:
    explicit AlignTimeoutError(double limit_s)
        : Error("alignment exceeded time limit of " + std::to_string(limit_s) + " s") {}
};

class ZeroVarianceObservedError : public Error {
public:
    ZeroVarianceObservedError() : Error("observed window has zero variance in every feature") {}
};

// --- diagnosis ---

class NoTransitionsInWindowError : public Error {
public:
    NoTransitionsInWindowError()
        : Error("window is degenerate under every fault's centroids") {}
};

class FaultBuildError : public Error {
public:
    FaultBuildError(const std::string& fault, const std::string& what)
        : Error("fault '" + fault + "': " + what), fault(fault) {}
    std::string fault;
};

// --- cli / config ---

class ConfigError : public Error {
public:
    explicit ConfigError(const std::string& what) : Error("config: " + what) {}
};

} // namespace pmfd

#endif
