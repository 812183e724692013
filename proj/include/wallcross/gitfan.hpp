#pragma once

#include "wallcross/lattice.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace wallcross {

using Anticone = IndexSet;

struct GITData {
    int r = 0;
    int m = 0;
    std::vector<IntVec> D;  // m rows of length r
    std::vector<std::string> labels;

    std::vector<RatVec> Drat() const;
    long long pair(int i, const IntVec& v) const { return dot(D.at(i), v); }
    Rat pair(int i, const RatVec& v) const { return dot(D.at(i), v); }
};

// Checks m >= r >= 1, row lengths and rank.
GITData make_git(std::vector<IntVec> D, std::vector<std::string> labels = {});

using Mask = std::uint32_t;
Mask to_mask(const IndexSet& s);
IndexSet from_mask(Mask m, int n);
std::string to_string(const IndexSet& s);  // 1-based, e.g. {1,3}

// omega in the open cone of strictly positive combinations of {D_i : i in I}.
bool in_open_cone(const GITData& git, Mask I, const RatVec& omega);

struct AnticoneSet {
    RatVec omega;
    int m = 0;
    std::vector<Mask> masks;  // sorted
    std::vector<char> member;  // indexed by mask

    bool contains(Mask s) const { return member.at(s) != 0; }
    bool contains(const IndexSet& s) const { return contains(to_mask(s)); }
    std::size_t size() const { return masks.size(); }
};

// Anticone set without the stability checks (used for points on walls).
AnticoneSet anticone_set(const GITData& git, const RatVec& omega);
AnticoneSet validate_stability(const GITData& git, const RatVec& omega);
std::vector<Anticone> minimal_anticones(const GITData& git, const AnticoneSet& A);
IndexSet s_set(const AnticoneSet& A);

struct SectorLabel {
    RatVec f;     // representative with entries in [0, 1)
    IndexSet I_f;
    Rat age;
    int side = 0;  // +1, -1 or 0 when not tied to a chamber

    bool is_zero() const;
    bool operator==(const SectorLabel& o) const { return f == o.f; }
    bool operator<(const SectorLabel& o) const;
};

SectorLabel make_sector(const GITData& git, const RatVec& f, int side = 0);
// Isotropy group of the fixed point delta, as canonical sector representatives.
std::vector<RatVec> isotropy_sectors(const GITData& git, const Anticone& delta);
std::vector<SectorLabel> box_elements(const GITData& git, const RatVec& omega, int side = 0);
SectorLabel inv_sector(const GITData& git, const SectorLabel& f);

struct FixedPointLabel {
    Anticone delta;
    SectorLabel f;
    bool operator==(const FixedPointLabel& o) const { return delta == o.delta && f == o.f; }
    bool operator<(const FixedPointLabel& o) const;
};

std::string to_string(const FixedPointLabel& p);
std::vector<FixedPointLabel> fixed_points(const GITData& git, const AnticoneSet& A, int side = 0);

enum class WallCase { I, IIi, IIii, III };
std::string to_string(WallCase c);

struct WallCrossing {
    GITData git;
    RatVec omega_plus, omega_minus, omega_zero;
    AnticoneSet A_plus, A_minus, A_zero;
    IntVec e;
    IndexSet M_plus, M_minus, M_zero;
    IndexSet S_plus, S_minus, S_zero;
    WallCase wall_case = WallCase::I;
    std::optional<int> i_plus, i_minus;
    std::map<int, RatVec> xi_plus, xi_minus;

    long long De(int j) const { return git.pair(j, e); }
    const AnticoneSet& anticones(int side) const { return side > 0 ? A_plus : A_minus; }
    const IndexSet& S(int side) const { return side > 0 ? S_plus : S_minus; }
    bool in_both(const Anticone& d) const { return A_plus.contains(d) && A_minus.contains(d); }
};

// xi_j for j in S: D_j . xi = 1, and zero on the remaining indices of S.
std::map<int, RatVec> xi_vectors(const GITData& git, const AnticoneSet& A);

WallCrossing wall_crossing(const GITData& git, const RatVec& omega_plus, const RatVec& omega_minus);
// Same data with the roles of the two chambers exchanged.
WallCrossing swap_sides(const WallCrossing& wc);

struct NextToPair {
    FixedPointLabel plus, minus;
    Rat alpha;              // f_minus = f_plus + alpha e modulo L
    RatVec f_minus_lift;    // f_plus + alpha e, the lift compatible with f_plus
    int j_plus = -1, j_minus = -1;
    long long l = 0;        // -D_{j_minus} . e
};

bool anticones_next_to(const WallCrossing& wc, const Anticone& dp, const Anticone& dm);
std::vector<NextToPair> next_to_pairs(const WallCrossing& wc);

struct CoordinateChange {
    Rat c;
    std::vector<Rat> c_i;  // r - 1 entries
    Int A, B;
    std::vector<Int> A_i;
    std::vector<IntVec> basis_plus;   // ordered: wall vectors first, off-wall vector last
    std::vector<IntVec> basis_minus;
};

bool is_nef(const GITData& git, const AnticoneSet& A, const IndexSet& S, const RatVec& p);
CoordinateChange coordinate_change(const WallCrossing& wc);

}  // namespace wallcross
