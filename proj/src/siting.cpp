#include "psh/siting.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <thread>

namespace psh {

std::string_view to_string(Scheme scheme) {
    switch (scheme) {
        case Scheme::L2L: return "L2L";
        case Scheme::L2F: return "L2F";
        case Scheme::L2R: return "L2R";
        case Scheme::F2R: return "F2R";
    }
    return "?";
}

CandidateKind prospective_kind(Scheme scheme) {
    return scheme == Scheme::F2R ? CandidateKind::FlatLand : CandidateKind::Lake;
}

CandidateKind second_kind(Scheme scheme) {
    switch (scheme) {
        case Scheme::L2L: return CandidateKind::Lake;
        case Scheme::L2F: return CandidateKind::FlatLand;
        case Scheme::L2R:
        case Scheme::F2R: return CandidateKind::RiverPoint;
    }
    return CandidateKind::Lake;
}

bool involves_river(Scheme scheme) { return second_kind(scheme) == CandidateKind::RiverPoint; }

std::string_view to_string(Tier tier) {
    switch (tier) {
        case Tier::Theoretical: return "Theoretical";
        case Tier::Technical: return "Technical";
        case Tier::Exploitable: return "Exploitable";
    }
    return "?";
}

double energy_gwh(double eta, double volume_m3, double head_m, const SchemeConfig& cfg) {
    return eta * cfg.water_density * volume_m3 * cfg.gravity * head_m / (3600.0 * 1e9);
}

double annual_energy_gwh(double daily_capacity_gwh) { return daily_capacity_gwh * 365.0; }

double usable_volume(Scheme scheme, const ReservoirCandidate& prospective, const ReservoirCandidate& second,
                     const SchemeConfig& cfg) {
    const CandidateKind want_a = prospective_kind(scheme);
    const CandidateKind want_b = second_kind(scheme);
    const bool straight = prospective.kind == want_a && second.kind == want_b;
    const bool swapped = prospective.kind == want_b && second.kind == want_a;
    if (!straight && !swapped) throw DomainError(std::string("candidate kinds do not match scheme ") + std::string(to_string(scheme)));

    auto surface = [](const ReservoirCandidate& c) {
        if (!c.surface_area_m2) throw DomainError("candidate " + std::to_string(c.id) + " has no surface area");
        return *c.surface_area_m2;
    };
    if (involves_river(scheme)) {
        const auto& storage = prospective.kind == CandidateKind::RiverPoint ? second : prospective;
        return surface(storage) * cfg.usable_depth_m;
    }
    return std::min(surface(prospective), surface(second)) * cfg.usable_depth_m;
}

SpatialIndex::SpatialIndex(std::vector<ReservoirCandidate> candidates, double cell_size)
    : candidates_(std::move(candidates)), cell_size_(cell_size) {
    if (!(cell_size_ > 0.0)) throw DomainError("spatial index cell size must be positive");
    for (std::size_t i = 0; i < candidates_.size(); ++i) buckets_[key_of(candidates_[i].centroid)].push_back(i);
}

SpatialIndex::Key SpatialIndex::key_of(const Point& p) const {
    return {static_cast<std::int64_t>(std::floor(p.x() / cell_size_)),
            static_cast<std::int64_t>(std::floor(p.y() / cell_size_))};
}

std::vector<std::size_t> SpatialIndex::query(const Point& center, double radius) const {
    std::vector<std::size_t> hits;
    const Key home = key_of(center);
    const auto reach = static_cast<std::int64_t>(std::max(1.0, std::ceil(radius / cell_size_)));
    for (std::int64_t dx = -reach; dx <= reach; ++dx) {
        for (std::int64_t dy = -reach; dy <= reach; ++dy) {
            auto it = buckets_.find({home.first + dx, home.second + dy});
            if (it == buckets_.end()) continue;
            for (std::size_t i : it->second)
                if ((candidates_[i].centroid - center).norm() <= radius) hits.push_back(i);
        }
    }
    std::sort(hits.begin(), hits.end());
    return hits;
}

Pairing make_pairing(Scheme scheme, const ReservoirCandidate& prospective, const ReservoirCandidate& second,
                     const SchemeConfig& cfg) {
    Pairing p;
    p.prospective_id = prospective.id;
    p.second_id = second.id;
    p.prospective_elevation_m = prospective.elevation_m;
    const bool prospective_upper = prospective.elevation_m >= second.elevation_m;
    const auto& up = prospective_upper ? prospective : second;
    const auto& low = prospective_upper ? second : prospective;
    p.upper_id = up.id;
    p.lower_id = low.id;
    p.upper_centroid = up.centroid;
    p.lower_centroid = low.centroid;
    p.upper_elevation_m = up.elevation_m;
    p.lower_elevation_m = low.elevation_m;
    p.head_m = up.elevation_m - low.elevation_m;
    p.separation_m = (prospective.centroid - second.centroid).norm();
    p.l_over_h = p.head_m > 0.0 ? p.separation_m / p.head_m : std::numeric_limits<double>::infinity();
    p.usable_volume_m3 = usable_volume(scheme, prospective, second, cfg);
    return p;
}

std::vector<Pairing> find_pairs(Scheme scheme, const ReservoirCandidate& prospective, const SpatialIndex& pool,
                                const SchemeConfig& cfg) {
    std::vector<Pairing> out;
    for (std::size_t i : pool.query(prospective.centroid, cfg.search_radius_m)) {
        const auto& second = pool[i];
        if (second.kind == prospective.kind && second.id == prospective.id) continue;
        out.push_back(make_pairing(scheme, prospective, second, cfg));
    }
    return out;
}

bool qualifies_theoretical(const Pairing& p, const SchemeConfig& cfg) {
    return p.head_m >= cfg.min_head_m && p.separation_m <= cfg.max_separation_m &&
           energy_gwh(cfg.eta_theoretical, p.usable_volume_m3, p.head_m, cfg) >= cfg.energy_threshold_gwh;
}

bool qualifies_technical(const Pairing& p, const SchemeConfig& cfg) {
    return qualifies_theoretical(p, cfg) && p.l_over_h < cfg.max_l_over_h &&
           energy_gwh(cfg.eta_technical, p.usable_volume_m3, p.head_m, cfg) >= cfg.energy_threshold_gwh;
}

namespace {

const Pairing* best_of(const std::vector<Pairing>& pairs, double eta, const SchemeConfig& cfg,
                       bool (*eligible)(const Pairing&, const SchemeConfig&)) {
    const Pairing* best = nullptr;
    double best_energy = 0.0;
    for (const auto& p : pairs) {
        if (!eligible(p, cfg)) continue;
        const double e = energy_gwh(eta, p.usable_volume_m3, p.head_m, cfg);
        const bool better = !best || e > best_energy ||
                            (e == best_energy && (p.l_over_h < best->l_over_h ||
                                                  (p.l_over_h == best->l_over_h && p.second_id < best->second_id)));
        if (better) {
            best = &p;
            best_energy = e;
        }
    }
    return best;
}

}  // namespace

std::optional<PshSite> select_best_theoretical(Scheme scheme, const std::vector<Pairing>& pairs, const SchemeConfig& cfg) {
    const Pairing* best = best_of(pairs, cfg.eta_theoretical, cfg, qualifies_theoretical);
    if (!best) return std::nullopt;
    PshSite site;
    site.scheme = scheme;
    site.pair = *best;
    site.energy_theoretical_gwh = energy_gwh(cfg.eta_theoretical, best->usable_volume_m3, best->head_m, cfg);
    return site;
}

std::optional<PshSite> select_best_technical(Scheme scheme, const std::vector<Pairing>& pairs, const SchemeConfig& cfg) {
    const Pairing* best = best_of(pairs, cfg.eta_technical, cfg, qualifies_technical);
    if (!best) return std::nullopt;
    PshSite site;
    site.scheme = scheme;
    site.pair = *best;
    site.energy_theoretical_gwh = energy_gwh(cfg.eta_theoretical, best->usable_volume_m3, best->head_m, cfg);
    site.technical_pair = *best;
    site.energy_technical_gwh = energy_gwh(cfg.eta_technical, best->usable_volume_m3, best->head_m, cfg);
    return site;
}

namespace {

struct Outcome {
    std::optional<PshSite> site;
    PairAudit audit;
};

Outcome evaluate_one(Scheme scheme, const ReservoirCandidate& prospective, const SpatialIndex& pool,
                     const SchemeConfig& cfg) {
    Outcome out;
    out.audit.scheme = scheme;
    out.audit.prospective_id = prospective.id;
    const auto pairs = find_pairs(scheme, prospective, pool, cfg);
    out.audit.in_radius = pairs.size();
    for (const auto& p : pairs) {
        if (p.head_m < cfg.min_head_m) ++out.audit.rejected_head;
        else if (p.separation_m > cfg.max_separation_m) ++out.audit.rejected_separation;
        else if (energy_gwh(cfg.eta_theoretical, p.usable_volume_m3, p.head_m, cfg) < cfg.energy_threshold_gwh)
            ++out.audit.rejected_energy;
        else if (!(p.l_over_h < cfg.max_l_over_h)) ++out.audit.rejected_l_over_h;
    }
    out.site = select_best_theoretical(scheme, pairs, cfg);
    if (!out.site) return out;
    out.audit.theoretical = true;
    if (auto tech = select_best_technical(scheme, pairs, cfg)) {
        out.site->technical_pair = tech->technical_pair;
        out.site->energy_technical_gwh = tech->energy_technical_gwh;
        out.audit.technical = true;
    }
    return out;
}

}  // namespace

SchemeResult evaluate_scheme(Scheme scheme, const std::vector<ReservoirCandidate>& prospective,
                             const std::vector<ReservoirCandidate>& second, const SchemeConfig& cfg, unsigned workers) {
    std::vector<const ReservoirCandidate*> order;
    order.reserve(prospective.size());
    for (const auto& c : prospective) order.push_back(&c);
    std::stable_sort(order.begin(), order.end(), [](const auto* a, const auto* b) { return a->id < b->id; });

    const SpatialIndex pool(second, cfg.search_radius_m);
    std::vector<Outcome> outcomes(order.size());
    auto work = [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) outcomes[i] = evaluate_one(scheme, *order[i], pool, cfg);
    };

    const std::size_t n = std::max<std::size_t>(1, std::min<std::size_t>(workers, order.size()));
    if (n == 1) {
        work(0, order.size());
    } else {
        std::vector<std::jthread> pool_threads;
        const std::size_t per = (order.size() + n - 1) / n;
        for (std::size_t t = 0; t < n; ++t)
            pool_threads.emplace_back(work, std::min(order.size(), t * per), std::min(order.size(), (t + 1) * per));
    }

    SchemeResult result;
    for (auto& o : outcomes) {
        result.audits.push_back(o.audit);
        if (o.site) result.sites.push_back(std::move(*o.site));
    }
    return result;
}

void assign_site_ids(std::vector<PshSite>& sites) {
    std::stable_sort(sites.begin(), sites.end(), [](const PshSite& a, const PshSite& b) {
        if (a.scheme != b.scheme) return a.scheme < b.scheme;
        return a.prospective_id() < b.prospective_id();
    });
    long id = 0;
    for (auto& s : sites) s.site_id = ++id;
}

}  // namespace psh
