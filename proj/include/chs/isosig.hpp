#pragma once

#include <compare>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "chs/triangulation.hpp"

namespace chs {

/// Canonical, relabeling-invariant text key of a closed connected triangulation.
/// Printable over [a-zA-Z0-9+-], six bits per symbol.
struct Signature {
    std::string text;

    friend auto operator<=>(const Signature&, const Signature&) = default;
};

class SignatureError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Old tetrahedron t becomes tet_image[t]; its vertex v becomes vertex_maps[t][v].
struct Relabeling {
    std::vector<int> tet_image;
    std::vector<Perm4> vertex_maps;
};

/// Minimum over all 24n (start tetrahedron, start labelling) breadth-first
/// normal forms. Throws SignatureError for open or disconnected input.
Signature canonical_signature(const Triangulation& tri);

/// Every relabeling that attains the canonical form (more than one iff the
/// triangulation has nontrivial combinatorial automorphisms).
std::vector<Relabeling> canonical_relabelings(const Triangulation& tri);

struct CanonicalForm {
    Signature sig;
    std::vector<Relabeling> relabelings;
};

/// Signature and all canonical relabelings from one enumeration.
CanonicalForm canonical_form(const Triangulation& tri);

Triangulation relabel(const Triangulation& tri, const Relabeling& map);

/// Inverse of canonical_signature; throws SignatureError on malformed or
/// non-canonical strings.
Triangulation decode_signature(std::string_view text);

}  // namespace chs
