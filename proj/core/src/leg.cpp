#include "culp/leg.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <numeric>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace culp {

namespace {

// Directed k-nearest lists over rows of X; node ids are row index + 1.
// Preference order: higher similarity first, ties by ascending node id.
std::vector<std::vector<int>> directed_knn(const DataMatrix& X,
                                           const SimilarityConfig& sim, int k) {
    const int N = static_cast<int>(X.rows);
    std::vector<std::vector<int>> lists(N);
    std::vector<std::pair<double, int>> cand;
    for (int i = 0; i < N; ++i) {
        cand.clear();
        for (int j = 0; j < N; ++j) {
            if (j == i) continue;
            cand.emplace_back(similarity(sim, X.row(i), X.row(j)), j + 1);
        }
        auto pref = [](const std::pair<double, int>& a, const std::pair<double, int>& b) {
            if (a.first != b.first) return a.first > b.first;
            return a.second < b.second;
        };
        std::partial_sort(cand.begin(), cand.begin() + k, cand.end(), pref);
        lists[i].reserve(k);
        for (int t = 0; t < k; ++t) lists[i].push_back(cand[t].second);
    }
    return lists;
}

}  // namespace

EdgeList knn_convert(const DataMatrix& X, const SimilarityConfig& sim, int k) {
    X.validate();
    const int N = static_cast<int>(X.rows);
    if (k < 1 || k > N - 1)
        throw std::invalid_argument("knn_convert: k outside 1..N-1");
    auto lists = directed_knn(X, sim, k);
    std::set<std::pair<int, int>> edges;
    for (int i = 0; i < N; ++i)
        for (int j : lists[i])
            edges.insert({std::min(i + 1, j), std::max(i + 1, j)});
    return {edges.begin(), edges.end()};
}

EdgeList rradius_convert(const DataMatrix& X, const SimilarityConfig& sim, double r) {
    X.validate();
    const int N = static_cast<int>(X.rows);
    EdgeList edges;
    for (int i = 0; i < N; ++i)
        for (int j = i + 1; j < N; ++j)
            if (similarity(sim, X.row(i), X.row(j)) > r) edges.emplace_back(i + 1, j + 1);
    return edges;
}

const std::vector<int>& Leg::neighbors(int v) const {
    if (v < 1 || v > node_count())
        throw std::invalid_argument("Leg: invalid node id " + std::to_string(v));
    return adj_[v];
}

EdgeKind Leg::edge_kind(int u, int v) const {
    const auto& nb = neighbors(u);
    if (!std::binary_search(nb.begin(), nb.end(), v))
        throw std::invalid_argument("Leg::edge_kind: no such edge");
    return (is_class(u) || is_class(v)) ? EdgeKind::Membership : EdgeKind::Similarity;
}

void Leg::rebuild_adjacency() {
    const int total = node_count();
    std::vector<std::set<int>> nb(total + 1);
    for (int i = 0; i < n_ + m_; ++i)
        for (int j : knn_[i]) {
            nb[i + 1].insert(j);
            nb[j].insert(i + 1);
        }
    for (int i = 1; i <= n_; ++i) {
        int c = class_node(y_[i - 1]);
        nb[i].insert(c);
        nb[c].insert(i);
    }
    adj_.assign(total + 1, {});
    std::size_t deg_sum = 0;
    for (int v = 1; v <= total; ++v) {
        adj_[v].assign(nb[v].begin(), nb[v].end());
        deg_sum += adj_[v].size();
    }
    edge_count_ = deg_sum / 2;
}

void Leg::validate() const {
    const int N = n_ + m_;
    for (int v = 1; v <= node_count(); ++v) {
        int class_nbrs = 0;
        for (int u : adj_[v]) {
            if (u == v) throw std::logic_error("Leg: self loop at node " + std::to_string(v));
            if (is_class(v) && is_class(u))
                throw std::logic_error("Leg: edge joins two class nodes");
            if (is_class(u)) ++class_nbrs;
            if (!std::binary_search(adj_[u].begin(), adj_[u].end(), v))
                throw std::logic_error("Leg: asymmetric adjacency");
        }
        if (is_labeled(v) && class_nbrs != 1)
            throw std::logic_error("Leg: labeled node without exactly one membership edge");
        if (is_unlabeled(v) && class_nbrs != 0)
            throw std::logic_error("Leg: unlabeled node with a membership edge");
    }
    if (k_ > 0) {
        double lo = n_ + 0.5 * k_ * N;
        double hi = n_ + static_cast<double>(k_) * N;
        if (static_cast<double>(edge_count_) < lo - 1e-9 ||
            static_cast<double>(edge_count_) > hi + 1e-9)
            throw std::logic_error("Leg: edge count " + std::to_string(edge_count_) +
                                   " outside bounds [" + std::to_string(lo) + ", " +
                                   std::to_string(hi) + "]");
    }
}

void Leg::check_edge_bounds(int k) const {
    const int N = n_ + m_;
    double lo = n_ + 0.5 * k * N;
    double hi = n_ + static_cast<double>(k) * N;
    if (static_cast<double>(edge_count_) < lo - 1e-9 ||
        static_cast<double>(edge_count_) > hi + 1e-9)
        throw std::runtime_error("edge count " + std::to_string(edge_count_) +
                                 " violates bounds [" + std::to_string(lo) + ", " +
                                 std::to_string(hi) + "] for k=" + std::to_string(k));
}

Leg build_leg(const DataMatrix& X_l, const DataMatrix& X_u, const LabelVector& y,
              const SimilarityConfig& sim, int k) {
    X_l.validate();
    y.validate();
    if (y.labels.size() != X_l.rows)
        throw std::invalid_argument("build_leg: label count != labeled rows");
    if (X_u.rows > 0 && X_u.cols != X_l.cols)
        throw std::invalid_argument("build_leg: labeled/unlabeled dimension mismatch");

    Leg leg;
    leg.n_ = static_cast<int>(X_l.rows);
    leg.m_ = static_cast<int>(X_u.rows);
    leg.C_ = y.class_count;
    leg.k_ = k;
    leg.sim_ = sim;
    leg.y_ = y.labels;

    leg.X_ = X_l;
    for (std::size_t i = 0; i < X_u.rows; ++i) leg.X_.append_row(X_u.row(i));

    const int N = leg.n_ + leg.m_;
    if (k < 1 || k > N - 1)
        throw std::invalid_argument("build_leg: k outside 1..n+m-1");
    leg.knn_ = directed_knn(leg.X_, sim, k);
    leg.rebuild_adjacency();
    leg.validate();
    return leg;
}

std::pair<Leg, int> Leg::insert_unlabeled(std::span<const double> x_new) const {
    if (!has_features())
        throw std::logic_error("insert_unlabeled: graph was loaded without features");
    if (x_new.size() != X_.cols)
        throw std::invalid_argument("insert_unlabeled: dimension mismatch");

    Leg out = *this;
    out.X_.append_row(x_new);
    out.m_ += 1;
    const int new_id = out.n_ + out.m_;  // class nodes shift up by one

    // one linear pass over the existing data nodes
    const int N_old = n_ + m_;
    std::vector<double> s(N_old);
    for (int i = 0; i < N_old; ++i)
        s[i] = similarity(sim_, out.X_.row(i), x_new);

    // the new node's own directed k-nearest list
    std::vector<int> ids(N_old);
    std::iota(ids.begin(), ids.end(), 1);
    std::partial_sort(ids.begin(), ids.begin() + k_, ids.end(), [&](int a, int b) {
        if (s[a - 1] != s[b - 1]) return s[a - 1] > s[b - 1];
        return a < b;
    });
    ids.resize(k_);
    out.knn_.push_back(ids);

    // existing nodes adopt the new point iff it beats their current k-th
    // nearest; the new id is the largest, so equal similarity keeps the old
    for (int i = 0; i < N_old; ++i) {
        auto& list = out.knn_[i];
        int worst = list.back();
        double s_worst = similarity(sim_, X_.row(i), X_.row(worst - 1));
        if (s[i] > s_worst) {
            list.back() = new_id;
            // restore preference order; the new entry can only move forward
            for (std::size_t t = list.size() - 1; t > 0; --t) {
                double s_prev = similarity(sim_, out.X_.row(i), out.X_.row(list[t - 1] - 1));
                if (s[i] > s_prev || (s[i] == s_prev && new_id < list[t - 1]))
                    std::swap(list[t], list[t - 1]);
                else
                    break;
            }
        }
    }

    out.rebuild_adjacency();
    out.validate();
    return {std::move(out), new_id};
}

void Leg::dump(std::ostream& os) const {
    os << "n " << n_ << "\n"
       << "m " << m_ << "\n"
       << "C " << C_ << "\n";
    for (int v = 1; v <= node_count(); ++v)
        for (int u : adj_[v])
            if (v < u)
                os << v << " " << u << " "
                   << (edge_kind(v, u) == EdgeKind::Membership ? 'C' : 'S') << "\n";
}

Leg Leg::load(std::istream& is) {
    Leg leg;
    std::string key;
    for (char expect : {'n', 'm', 'C'}) {
        int val = -1;
        if (!(is >> key >> val) || key != std::string(1, expect) || val < 0)
            throw std::runtime_error("Leg::load: malformed header");
        if (expect == 'n') leg.n_ = val;
        else if (expect == 'm') leg.m_ = val;
        else leg.C_ = val;
    }
    const int total = leg.node_count();
    std::vector<std::set<int>> nb(total + 1);
    leg.y_.assign(leg.n_, 0);
    int u, v;
    char kind;
    while (is >> u >> v >> kind) {
        if (u < 1 || u > total || v < 1 || v > total || u == v)
            throw std::runtime_error("Leg::load: bad edge " + std::to_string(u) + " " +
                                     std::to_string(v));
        if (kind != 'S' && kind != 'C')
            throw std::runtime_error("Leg::load: bad edge kind");
        nb[u].insert(v);
        nb[v].insert(u);
        if (kind == 'C') {
            int data = leg.is_class(u) ? v : u;
            int cls = leg.is_class(u) ? u : v;
            if (!leg.is_class(cls) || !leg.is_labeled(data))
                throw std::runtime_error("Leg::load: membership edge endpoints invalid");
            leg.y_[data - 1] = leg.label_of_class_node(cls);
        }
    }
    leg.adj_.assign(total + 1, {});
    std::size_t deg_sum = 0;
    for (int w = 1; w <= total; ++w) {
        leg.adj_[w].assign(nb[w].begin(), nb[w].end());
        deg_sum += leg.adj_[w].size();
    }
    leg.edge_count_ = deg_sum / 2;
    leg.validate();  // k unknown for a dump, Eq-bound check is skipped
    return leg;
}

}  // namespace culp
