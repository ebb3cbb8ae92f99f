#include <numeric>

#include "ode.hpp"
#include "rhs.hpp"
#include "wqed/dynamics.hpp"
#include "wqed/kernels.hpp"

namespace wqed {

namespace {

struct Node {
    int parent = -1;
    int channel = -1;
    int depth = 0;
    std::string label;
    Eigen::Index offset = 0;       // start of rho block
    Eigen::Index term_offset = 0;  // start of terminal scalars
};

void check_compatible(const std::vector<Segment>& schedule) {
    const auto& ref = schedule.front().model;
    for (const auto& seg : schedule) {
        seg.model.validate();
        const auto& m = seg.model;
        if (m.dim() != ref.dim()) throw std::invalid_argument("schedule dimension mismatch");
        if (m.jumps.size() != ref.jumps.size() || m.losses.size() != ref.losses.size())
            throw std::invalid_argument("schedule channel structure mismatch");
        for (std::size_t c = 0; c < m.jumps.size(); ++c)
            if (m.jumps[c].label != ref.jumps[c].label) throw std::invalid_argument("schedule channel labels differ");
        for (std::size_t c = 0; c < m.losses.size(); ++c)
            if (m.losses[c].label != ref.losses[c].label) throw std::invalid_argument("schedule loss labels differ");
        if (!(seg.duration >= 0.0)) throw std::invalid_argument("segment duration must be >= 0");
    }
}

}  // namespace

double JumpSeries::total() const {
    double t = 0.0;
    for (const auto& [k, v] : probability) t += v;
    return t;
}

Mat JumpSeries::reconstruct() const {
    Mat r;
    for (const auto& [k, m] : state) {
        if (r.size() == 0) r = Mat::Zero(m.rows(), m.cols());
        r += m;
    }
    return r;
}

JumpSeries jump_series(const std::vector<Segment>& schedule, const Mat& rho0, int max_jumps, double tol) {
    if (max_jumps < 0) throw std::invalid_argument("max_jumps must be >= 0");
    if (schedule.empty()) throw std::invalid_argument("empty schedule");
    check_compatible(schedule);
    const auto& ref = schedule.front().model;
    const Eigen::Index d = ref.dim();
    if (rho0.rows() != d) throw std::invalid_argument("initial state dimension mismatch");
    const int nc = static_cast<int>(ref.jumps.size());
    const int nl = static_cast<int>(ref.losses.size());

    std::vector<Node> nodes;
    nodes.push_back({-1, -1, 0, kNoJump});
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        if (nodes[i].depth == max_jumps) continue;
        for (int c = 0; c < nc; ++c) {
            Node n;
            n.parent = static_cast<int>(i);
            n.channel = c;
            n.depth = nodes[i].depth + 1;
            n.label = (i == 0 ? std::string() : nodes[i].label + ">") + ref.jumps[c].label;
            nodes.push_back(n);
        }
    }
    Eigen::Index off = 0;
    for (auto& n : nodes) {
        n.offset = off;
        off += d * d;
    }
    std::vector<std::string> term_labels;
    for (auto& n : nodes) {
        n.term_offset = off;
        const std::string prefix = n.parent < 0 ? std::string() : n.label + ">";
        for (int l = 0; l < nl; ++l) term_labels.push_back(prefix + ref.losses[l].label);
        off += nl;
        if (n.depth == max_jumps) {
            for (int c = 0; c < nc; ++c) term_labels.push_back(prefix + ref.jumps[c].label);
            off += nc;
        }
    }
    const Eigen::Index total = off;
    const Eigen::Index first_term = static_cast<Eigen::Index>(nodes.size()) * d * d;

    Vec y = Vec::Zero(total);
    Eigen::Map<Mat>(y.data(), d, d) = rho0;

    const auto n = static_cast<std::size_t>(d);
    OdeOptions opt{tol, tol};
    for (const auto& seg : schedule) {
        detail::LindbladRhs rhs(seg.model);
        Mat scratch(d, d), fed(d, d);
        std::vector<Mat> jdj;
        for (const auto& j : seg.model.jumps) jdj.push_back((j.op.adjoint() * j.op).transpose());
        auto f = [&](double, const Vec& yy, Vec& dy) {
            for (const auto& nd : nodes) {
                rhs.apply(yy.data() + nd.offset, dy.data() + nd.offset, dy.data() + nd.term_offset, false);
                if (nd.parent >= 0) {
                    const auto& ch = seg.model.jumps[static_cast<std::size_t>(nd.channel)];
                    if (ch.rate > 0.0) {
                        kernels::cgemm_nn(n, ch.op.data(), yy.data() + nodes[nd.parent].offset, scratch.data());
                        kernels::cgemm_nc(n, scratch.data(), ch.op.data(), fed.data());
                        kernels::caxpy(n * n, ch.rate, fed.data(), dy.data() + nd.offset);
                    }
                }
                if (nd.depth == max_jumps) {
                    for (int c = 0; c < nc; ++c) {
                        const auto& ch = seg.model.jumps[static_cast<std::size_t>(c)];
                        cplx acc = 0.0;
                        const cplx* k = jdj[static_cast<std::size_t>(c)].data();
                        const cplx* r = yy.data() + nd.offset;
                        for (std::size_t i = 0; i < n * n; ++i) acc += k[i] * r[i];
                        dy(nd.term_offset + nl + c) = ch.rate * acc;
                    }
                }
            }
        };
        detail::dopri5(f, y, 0.0, seg.duration, opt);
    }

    JumpSeries out;
    for (const auto& nd : nodes) {
        Mat r = Eigen::Map<const Mat>(y.data() + nd.offset, d, d);
        out.probability[nd.label] = r.trace().real();
        out.state[nd.label] = std::move(r);
    }
    for (Eigen::Index i = first_term; i < total; ++i)
        out.probability[term_labels[static_cast<std::size_t>(i - first_term)]] += y(i).real();
    return out;
}

std::map<std::string, double> jump_series_probabilities(const LindbladModel& model, const Vec& psi0, double horizon,
                                                        int max_jumps, double tol) {
    if (!(horizon >= 0.0)) throw std::invalid_argument("horizon must be >= 0");
    auto js = jump_series({{model, horizon}}, psi0 * psi0.adjoint(), max_jumps, tol);
    return js.probability;
}

}  // namespace wqed
