#pragma once

#include <ostream>
#include <vector>

#include "treediag/scalar.hpp"

namespace treediag {

// Line-oriented log of the congruence operations behind a reported diagonal:
//
//   addrow <t> <s> <c>   row t += c * row s, then column t += c * column s
//   swap <a> <b>         exchange rows a,b and columns a,b
//   emit <v> <d>         the diagonal entry of vertex v is final, with value d
//   entry <u> <v>        input entry m[u,v] joins the working matrix
//   node <i>             operations of decomposition node i are complete
//
// Replaying a trace against the all-zero matrix — adding m[u,v] into position
// (u,v)/(v,u) at each "entry" line and applying addrow/swap as paired
// row+column operations — ends in a diagonal matrix that matches the emits.
// Values use the same text forms as the diagonal report (rationals, or
// shortest round-trip decimals in real mode).
class TraceWriter {
public:
    explicit TraceWriter(std::ostream& out) : out_(&out) {}

    // When the solver runs on relabeled vertices, map them back on output so
    // the trace speaks the caller's labels. Node ids are never remapped.
    void relabel_output(const std::vector<int>* to_old) { to_old_ = to_old; }

    void addrow(int t, int s, const Scalar& c) {
        *out_ << "addrow " << original(t) << " " << original(s) << " " << c.str() << "\n";
    }
    void swap(int a, int b) { *out_ << "swap " << original(a) << " " << original(b) << "\n"; }
    void emit(int v, const Scalar& d) {
        *out_ << "emit " << original(v) << " " << d.str() << "\n";
    }
    void entry(int u, int v) { *out_ << "entry " << original(u) << " " << original(v) << "\n"; }
    void node(int i) { *out_ << "node " << i << "\n"; }

private:
    int original(int v) const { return to_old_ ? (*to_old_)[static_cast<size_t>(v)] : v; }

    std::ostream* out_;
    const std::vector<int>* to_old_ = nullptr;
};

} // namespace treediag
