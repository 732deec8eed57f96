#include "ufm/shrinker.hpp"

#include <algorithm>
#include <stdexcept>

#include "ufm/family.hpp"

namespace ufm {

ShrunkState::ShrunkState(const BipartiteMultigraph &input)
    : original_(input), current_(input) {
    int max_index = -1;
    for (const auto &v : input.vertices()) max_index = std::max(max_index, v.index);
    next_pseudo_index_ = max_index + 1;
}

std::vector<std::size_t> ShrunkState::active_records() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < records_.size(); ++i)
        if (!expanded_[i] && current_.has_vertex(records_[i].plus_pseudo))
            out.push_back(i);
    return out;
}

VertexSet ShrunkState::hat_vertex(VertexId v) const {
    VertexSet out;
    auto it = pseudo_record_.find(v);
    if (it == pseudo_record_.end()) {
        out.insert(v);
        return out;
    }
    for (const auto &u : records_[it->second].original_set)
        if (u.side == v.side) out.insert(u);
    return out;
}

VertexSet ShrunkState::hat_set(const VertexSet &x) const {
    VertexSet out;
    for (const auto &v : x) {
        VertexSet h = hat_vertex(v);
        out.insert(h.begin(), h.end());
    }
    return out;
}

void ShrunkState::shrink(const VertexSet &u, EdgeIdSet &f, Violation witness) {
    ShrinkRecord rec;
    rec.set_id = next_set_id_++;
    rec.original_set = u;
    rec.witness = std::move(witness);

    // Carrier of U at the current level: naturals in U, pseudovertices whose
    // preimage meets U (the preimage must then be contained in U).
    for (const auto &v : current_.vertices()) {
        auto it = pseudo_record_.find(v);
        bool inner = false;
        if (it == pseudo_record_.end()) {
            inner = u.count(v) > 0;
        } else {
            const VertexSet &pre = records_[it->second].original_set;
            bool meets = false, contained = true;
            for (const auto &w : pre) {
                if (u.count(w))
                    meets = true;
                else
                    contained = false;
            }
            if (meets && !contained)
                throw std::logic_error("shrink: set partially overlaps a shrunk set");
            inner = meets;
        }
        if (inner) (v.side == Side::plus ? rec.inner_plus : rec.inner_minus).insert(v);
    }
    if (rec.inner_plus.empty() || rec.inner_minus.empty())
        throw std::logic_error("shrink: carrier empty on one side");

    rec.plus_pseudo = vplus(next_pseudo_index_);
    rec.minus_pseudo = vminus(next_pseudo_index_);
    ++next_pseudo_index_;
    current_.add_vertex(rec.plus_pseudo);
    current_.add_vertex(rec.minus_pseudo);

    VertexSet inner_all = rec.inner_plus;
    inner_all.insert(rec.inner_minus.begin(), rec.inner_minus.end());

    std::vector<int> to_remove;
    std::vector<std::pair<int, Side>> to_repoint;
    for (const auto &[id, e] : current_.edges()) {
        bool p_in = inner_all.count(e.end_plus) > 0;
        bool m_in = inner_all.count(e.end_minus) > 0;
        if (p_in && m_in)
            to_remove.push_back(id);
        else if (p_in)
            to_repoint.emplace_back(id, Side::plus);
        else if (m_in)
            to_repoint.emplace_back(id, Side::minus);
    }
    for (int id : to_remove) {
        rec.removed_edges.push_back(current_.edge(id));
        current_.remove_edge(id);
        f.erase(id);
    }
    for (auto [id, side] : to_repoint) {
        rec.repointed.emplace_back(id, side, current_.edge(id).end(side));
        current_.repoint(id, side,
                         side == Side::plus ? rec.plus_pseudo : rec.minus_pseudo);
    }
    for (const auto &v : inner_all) current_.remove_vertex(v);

    pseudo_record_[rec.plus_pseudo] = static_cast<int>(records_.size());
    pseudo_record_[rec.minus_pseudo] = static_cast<int>(records_.size());
    records_.push_back(std::move(rec));
    expanded_.push_back(false);
}

void ShrunkState::restore_record_graph(std::size_t index) {
    if (expanded_.at(index)) throw std::logic_error("record already expanded");
    ShrinkRecord &rec = records_[index];
    if (!current_.has_vertex(rec.plus_pseudo))
        throw std::logic_error("record is nested inside a shrunk set");

    for (const auto &v : rec.inner_plus) current_.add_vertex(v);
    for (const auto &v : rec.inner_minus) current_.add_vertex(v);
    for (const auto &[id, side, old_end] : rec.repointed)
        current_.repoint(id, side, old_end);
    current_.remove_vertex(rec.plus_pseudo);
    current_.remove_vertex(rec.minus_pseudo);
    for (const Edge &e : rec.removed_edges) current_.insert_edge(e);
    expanded_[index] = true;
}

void ShrunkState::expand_record(std::size_t index, EdgeIdSet &f,
                                const FamilyOracle &family,
                                const DeficiencyPreference &prefer,
                                const EdgeKeepPreference &keep, bool underfill) {
    restore_record_graph(index);
    const ShrinkRecord &rec = records_[index];

    auto candidates = family.expansion_candidates(*this, rec, f, prefer);
    if (candidates.empty())
        throw std::runtime_error("family produced no expansion for a shrunk set");

    if (keep && candidates.size() > 1) {
        // Candidates dropping fewer must-keep inner edges come first.
        std::vector<int> wanted;
        for (const Edge &e : rec.removed_edges)
            if (keep(e.id)) wanted.push_back(e.id);
        if (!wanted.empty()) {
            auto dropped = [&](const std::vector<int> &cand) {
                int n = 0;
                for (int id : wanted)
                    if (std::find(cand.begin(), cand.end(), id) == cand.end()) ++n;
                return n;
            };
            std::stable_sort(candidates.begin(), candidates.end(),
                             [&](const std::vector<int> &a, const std::vector<int> &b) {
                                 return dropped(a) < dropped(b);
                             });
        }
    }

    std::vector<int> chosen;
    if (candidates.size() == 1 || !family.needs_lookahead()) {
        chosen = candidates.front();
    } else {
        bool found = false;
        for (const auto &cand : candidates) {
            ShrunkState probe = *this;
            EdgeIdSet pf = f;
            for (int id : cand) pf.insert(id);
            if (search_feasible_completion(std::move(probe), pf, family)) {
                chosen = cand;
                found = true;
                break;
            }
        }
        if (!found)
            throw std::runtime_error(
                "no expansion candidate admits a feasible completion");
    }

    if (underfill) {
        // Leave one edge out so the caller can finish saturating the set
        // through its own augmentations. Never drop a must-keep edge, and
        // prefer parking the deficiency at preferred vertices.
        int best = -1, best_score = -1;
        for (int id : chosen) {
            if (keep && keep(id)) continue;
            const Edge &e = current_.edge(id);
            int score = 0;
            if (prefer) {
                if (prefer(e.end_plus)) ++score;
                if (prefer(e.end_minus)) ++score;
            }
            if (score > best_score || (score == best_score && id < best)) {
                best = id;
                best_score = score;
            }
        }
        if (best >= 0)
            chosen.erase(std::find(chosen.begin(), chosen.end(), best));
    }

    for (int id : chosen) {
        if (!current_.has_edge(id))
            throw std::logic_error("expansion edge not in restored graph");
        f.insert(id);
    }
    if (!satisfies_degree_constraint(f, family.t()))
        throw std::logic_error("expansion violated the degree constraint");
}

bool ShrunkState::satisfies_degree_constraint(const EdgeIdSet &f, int t) const {
    for (const auto &v : current_.vertices())
        if (degree(current_, f, v) > capacity(v, t)) return false;
    return true;
}

void expand_all(ShrunkState &state, EdgeIdSet &f, const FamilyOracle &family,
                const DeficiencyPreference &prefer, const EdgeKeepPreference &keep) {
    while (true) {
        auto active = state.active_records();
        if (active.empty()) break;
        state.expand_record(active.front(), f, family, prefer, keep);
    }
}

void expand_zero_dual(ShrunkState &state, EdgeIdSet &f, const FamilyOracle &family,
                      const std::map<int, Rat> &r, const DeficiencyPreference &prefer,
                      const EdgeKeepPreference &keep) {
    bool progressed = true;
    while (progressed) {
        progressed = false;
        for (std::size_t i : state.active_records()) {
            auto it = r.find(state.records()[i].set_id);
            Rat value = it == r.end() ? Rat(0) : it->second;
            if (value.is_zero()) {
                state.expand_record(i, f, family, prefer, keep, true);
                progressed = true;
                break;
            }
        }
    }
}

std::optional<EdgeIdSet> search_feasible_completion(ShrunkState state, EdgeIdSet f,
                                                    const FamilyOracle &family) {
    auto active = state.active_records();
    if (active.empty()) {
        if (family.check_original(state.original(), f)) return f;
        return std::nullopt;
    }
    std::size_t index = active.front();
    state.restore_record_graph(index);
    const ShrinkRecord &rec = state.records()[index];
    for (const auto &cand :
         family.expansion_candidates(state, rec, f, nullptr)) {
        EdgeIdSet cf = f;
        for (int id : cand) cf.insert(id);
        if (!state.satisfies_degree_constraint(cf, family.t())) continue;
        if (auto done = search_feasible_completion(state, cf, family)) return done;
    }
    return std::nullopt;
}

}  // namespace ufm
