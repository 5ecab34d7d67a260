#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "psh/config.hpp"
#include "psh/terrain.hpp"

namespace psh {

/// Reservoir configurations: first letter is the prospective reservoir,
/// second letter the partner it is paired with.
enum class Scheme { L2L, L2F, L2R, F2R };

inline constexpr std::array<Scheme, 4> kAllSchemes = {Scheme::L2L, Scheme::L2F, Scheme::L2R, Scheme::F2R};

std::string_view to_string(Scheme scheme);
CandidateKind prospective_kind(Scheme scheme);
CandidateKind second_kind(Scheme scheme);
bool involves_river(Scheme scheme);

enum class Tier { Theoretical = 0, Technical = 1, Exploitable = 2 };

std::string_view to_string(Tier tier);

/// One prospective/second pairing, oriented so the higher member is upper.
struct Pairing {
    long prospective_id = 0;
    long second_id = 0;
    long upper_id = 0;
    long lower_id = 0;
    double prospective_elevation_m = 0.0;
    Point upper_centroid = Point::Zero();
    Point lower_centroid = Point::Zero();
    double upper_elevation_m = 0.0;
    double lower_elevation_m = 0.0;
    double head_m = 0.0;
    double separation_m = 0.0;
    double l_over_h = 0.0;
    double usable_volume_m3 = 0.0;
};

/// A selected pair for one prospective reservoir. The main `pair` is the
/// theoretical optimum; `technical_pair` is the l/h-restricted optimum, which
/// may use a different partner.
struct PshSite {
    long site_id = 0;
    Scheme scheme = Scheme::L2L;
    Tier tier = Tier::Theoretical;
    Pairing pair;
    double energy_theoretical_gwh = 0.0;
    std::optional<Pairing> technical_pair;
    std::optional<double> energy_technical_gwh;

    long prospective_id() const { return pair.prospective_id; }
    bool has_technical() const { return technical_pair.has_value(); }
    const Pairing& reference_pair() const { return technical_pair ? *technical_pair : pair; }
    /// Lower-reservoir centroid of the reference pair (powerhouse location).
    Point reference_point() const { return reference_pair().lower_centroid; }
};

/// E = eta * rho * V * g * H / (3600 * 1e9), in GWh.
double energy_gwh(double eta, double volume_m3, double head_m, const SchemeConfig& cfg);

/// One full generating cycle per day.
double annual_energy_gwh(double daily_capacity_gwh);

/// Exchangeable volume: the smaller surface for lake/flat pairings, the
/// non-river surface when one member is a river point; times the usable
/// depth. Accepts the two candidates in either order; throws DomainError when
/// their kinds do not match the scheme.
double usable_volume(Scheme scheme, const ReservoirCandidate& prospective, const ReservoirCandidate& second,
                     const SchemeConfig& cfg);

/// Uniform bucket grid over candidate centroids; bucket edge = cell_size.
class SpatialIndex {
public:
    SpatialIndex(std::vector<ReservoirCandidate> candidates, double cell_size);

    /// Indices (ascending) of candidates whose centroid lies within `radius`
    /// of `center`, boundary inclusive.
    std::vector<std::size_t> query(const Point& center, double radius) const;

    const std::vector<ReservoirCandidate>& candidates() const { return candidates_; }
    const ReservoirCandidate& operator[](std::size_t i) const { return candidates_[i]; }
    std::size_t size() const { return candidates_.size(); }
    double cell_size() const { return cell_size_; }

private:
    using Key = std::pair<std::int64_t, std::int64_t>;
    struct KeyHash {
        std::size_t operator()(const Key& k) const noexcept {
            return std::hash<std::int64_t>{}(k.first) ^ (std::hash<std::int64_t>{}(k.second) * 0x9E3779B97F4A7C15ull);
        }
    };

    Key key_of(const Point& p) const;

    std::vector<ReservoirCandidate> candidates_;
    double cell_size_;
    std::unordered_map<Key, std::vector<std::size_t>, KeyHash> buckets_;
};

/// Every second-set candidate within search_radius_m of the prospective
/// reservoir, annotated with head, separation, l/h and usable volume. The
/// prospective reservoir never pairs with itself.
std::vector<Pairing> find_pairs(Scheme scheme, const ReservoirCandidate& prospective, const SpatialIndex& pool,
                                const SchemeConfig& cfg);

/// Builds the annotated pairing for one prospective/second combination.
Pairing make_pairing(Scheme scheme, const ReservoirCandidate& prospective, const ReservoirCandidate& second,
                     const SchemeConfig& cfg);

/// Head, separation and theoretical-energy minimums all satisfied.
bool qualifies_theoretical(const Pairing& p, const SchemeConfig& cfg);

/// Theoretical qualification plus l/h strictly below max_l_over_h and the
/// energy threshold met at the technical efficiency.
bool qualifies_technical(const Pairing& p, const SchemeConfig& cfg);

/// Largest-energy qualifying pair at eta_theoretical; ties go to smaller l/h,
/// then smaller second-candidate id.
std::optional<PshSite> select_best_theoretical(Scheme scheme, const std::vector<Pairing>& pairs, const SchemeConfig& cfg);

/// Same selection restricted to technically eligible pairs, scored at
/// eta_technical. The returned site's pair and technical_pair coincide.
std::optional<PshSite> select_best_technical(Scheme scheme, const std::vector<Pairing>& pairs, const SchemeConfig& cfg);

/// Per-prospective outcome, used for audit logging.
struct PairAudit {
    Scheme scheme = Scheme::L2L;
    long prospective_id = 0;
    std::size_t in_radius = 0;
    std::size_t rejected_head = 0;
    std::size_t rejected_separation = 0;
    std::size_t rejected_energy = 0;
    std::size_t rejected_l_over_h = 0;
    bool theoretical = false;
    bool technical = false;
};

struct SchemeResult {
    std::vector<PshSite> sites;
    std::vector<PairAudit> audits;
};

/// Pairs every prospective reservoir against the second set and keeps the
/// theoretical site (with its technical pairing, when one exists).
/// Prospective reservoirs are processed in parallel over `workers` threads;
/// output is ordered by prospective id and independent of `workers`.
/// site_id is left at 0.
SchemeResult evaluate_scheme(Scheme scheme, const std::vector<ReservoirCandidate>& prospective,
                             const std::vector<ReservoirCandidate>& second, const SchemeConfig& cfg,
                             unsigned workers = 1);

/// Sorts by (scheme, prospective id) and numbers sites from 1.
void assign_site_ids(std::vector<PshSite>& sites);

}  // namespace psh
