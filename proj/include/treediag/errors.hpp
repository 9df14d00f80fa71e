#pragma once

#include <stdexcept>
#include <string>

namespace treediag {

// Base for all library errors. Anything deriving from Error is an input or
// usage problem; InternalInvariantViolation alone signals a bug in this
// library and maps to a different CLI exit code.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// --- scalar ---------------------------------------------------------------

class ModeMismatch : public Error {
public:
    ModeMismatch() : Error("mode mismatch: cannot combine exact and real scalars") {}
};

class DivisionByZero : public Error {
public:
    DivisionByZero() : Error("division by zero") {}
};

// --- parsing --------------------------------------------------------------

class ParseError : public Error {
public:
    ParseError(long line, const std::string& what)
        : Error("parse error at line " + std::to_string(line) + ": " + what), line_(line) {}
    explicit ParseError(const std::string& what) : Error("parse error: " + what), line_(0) {}
    long line() const { return line_; }

private:
    long line_;
};

// --- matrix ---------------------------------------------------------------

class IndexOutOfRange : public Error {
public:
    IndexOutOfRange(int index, int n)
        : Error("index " + std::to_string(index) + " out of range [1, " + std::to_string(n) + "]") {}
};

class AsymmetricInput : public Error {
public:
    AsymmetricInput(int u, int v)
        : Error("entries (" + std::to_string(u) + "," + std::to_string(v) + ") and (" +
                std::to_string(v) + "," + std::to_string(u) + ") disagree") {}
};

// --- tree decompositions ----------------------------------------------------

class EmptyDecomposition : public Error {
public:
    EmptyDecomposition() : Error("decomposition has no nodes") {}
};

class NotATree : public Error {
public:
    explicit NotATree(const std::string& why) : Error("not a tree: " + why) {}
};

class UncoveredVertex : public Error {
public:
    explicit UncoveredVertex(int v) : Error("uncovered vertex " + std::to_string(v)), vertex(v) {}
    int vertex;
};

class UncoveredEdge : public Error {
public:
    UncoveredEdge(int u, int v)
        : Error("uncovered edge " + std::to_string(u) + " " + std::to_string(v)), u(u), v(v) {}
    int u, v;
};

class DisconnectedOccurrences : public Error {
public:
    explicit DisconnectedOccurrences(int v)
        : Error("disconnected occurrences of vertex " + std::to_string(v)), vertex(v) {}
    int vertex;
};

// A decomposition whose shape is not Leaf/Introduce/Forget/Join with an empty
// root bag. Raised when classifying externally supplied structures.
class NotNice : public Error {
public:
    explicit NotNice(const std::string& why) : Error("not a nice decomposition: " + why) {}
};

// --- boxes ------------------------------------------------------------------

class VertexAlreadyPresent : public Error {
public:
    explicit VertexAlreadyPresent(int v)
        : Error("vertex " + std::to_string(v) + " already present in bag") {}
};

class VertexNotInBag : public Error {
public:
    explicit VertexNotInBag(int v) : Error("vertex " + std::to_string(v) + " not in bag") {}
};

class BagMismatch : public Error {
public:
    BagMismatch() : Error("join children carry different bags") {}
};

// --- spectral ----------------------------------------------------------------

class InvalidInterval : public Error {
public:
    InvalidInterval() : Error("invalid interval: left endpoint must be below right endpoint") {}
};

// --- oracle ------------------------------------------------------------------

class MalformedTrace : public Error {
public:
    MalformedTrace(long line, const std::string& what)
        : Error("malformed trace at line " + std::to_string(line) + ": " + what) {}
};

// --- defensive checks ---------------------------------------------------------

class InternalInvariantViolation : public std::logic_error {
public:
    explicit InternalInvariantViolation(const std::string& what)
        : std::logic_error("internal invariant violated: " + what) {}
};

} // namespace treediag
