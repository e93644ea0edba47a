#include "isi2d/spa.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace isi2d {

namespace {

// phi(x) = -log tanh(x/2) = log((e^x + 1)/(e^x - 1)); self-inverse on (0, inf).
inline double phi(double x) { return std::log1p(2.0 / std::expm1(x)); }

}  // namespace

MessageStore::MessageStore(const ParityCheckMatrix& pcm)
    : n_(pcm.cols()), m_(pcm.rows()), var_edges_(pcm.cols()) {
    check_off_.reserve(m_ + 1);
    check_off_.push_back(0);
    edge_var_.reserve(static_cast<std::size_t>(pcm.edge_count()));
    for (int m = 0; m < m_; ++m) {
        for (int n : pcm.row(m)) {
            var_edges_[n].push_back(static_cast<int>(edge_var_.size()));
            edge_var_.push_back(n);
        }
        check_off_.push_back(static_cast<int>(edge_var_.size()));
    }
    z.assign(edge_var_.size(), 0.0);
    q.assign(edge_var_.size(), 0.0);
}

void MessageStore::reset_messages() {
    std::fill(z.begin(), z.end(), 0.0);
    std::fill(q.begin(), q.end(), 0.0);
}

void variable_update(MessageStore& store, const std::vector<double>& l_ext1, int n) {
    double total = l_ext1[n];
    for (int e : store.var_edges(n)) total += store.q[e];
    for (int e : store.var_edges(n)) store.z[e] = total - store.q[e];
}

void check_update(MessageStore& store, int m, int d_m) {
    const int begin = store.check_begin(m);
    const int end = store.check_begin(m + 1);
    double mag_sum = 0.0;
    int zero_count = 0;  // phi(0) is infinite; zeros handled separately
    unsigned sign_all = d_m & 1u;
    for (int e = begin; e < end; ++e) {
        const double z = store.z[e];
        if (z < 0.0) sign_all ^= 1u;
        const double az = std::min(std::fabs(z), kSpaLlrClamp);
        if (az == 0.0)
            ++zero_count;
        else
            mag_sum += phi(az);
    }
    for (int e = begin; e < end; ++e) {
        const double z = store.z[e];
        const double az = std::min(std::fabs(z), kSpaLlrClamp);
        const bool self_zero = az == 0.0;
        if (zero_count > (self_zero ? 1 : 0)) {
            store.q[e] = 0.0;
            continue;
        }
        const double rest = self_zero ? mag_sum : mag_sum - phi(az);
        const unsigned sign = sign_all ^ (z < 0.0 ? 1u : 0u);
        const double mag = std::min(phi(std::max(rest, 0.0)), kSpaLlrClamp);
        store.q[e] = sign ? -mag : mag;
    }
}

SpaResult spa_decode(const ParityCheckMatrix& pcm, const std::vector<std::uint8_t>& d,
                     const std::vector<double>& l_ext1, int i_c, bool early_exit) {
    if (i_c < 1) throw std::invalid_argument("spa_decode: i_c must be >= 1");
    if (static_cast<int>(l_ext1.size()) != pcm.cols())
        throw std::invalid_argument("spa_decode: channel LLR length != N");
    std::vector<std::uint8_t> synd = d;
    if (synd.empty()) synd.assign(pcm.rows(), 0);
    if (static_cast<int>(synd.size()) != pcm.rows())
        throw std::invalid_argument("spa_decode: syndrome length != M");

    MessageStore store(pcm);
    SpaResult res;
    res.hard.assign(pcm.cols(), 0);

    auto harden = [&]() {
        for (int n = 0; n < pcm.cols(); ++n) {
            double lc = l_ext1[n];
            for (int e : store.var_edges(n)) lc += store.q[e];
            res.hard[n] = lc > 0.0 ? 1 : 0;
        }
    };

    for (int l = 1; l <= i_c; ++l) {
        for (int n = 0; n < pcm.cols(); ++n) variable_update(store, l_ext1, n);
        for (int m = 0; m < pcm.rows(); ++m) check_update(store, m, synd[m]);
        res.iterations = l;
        if (early_exit) {
            harden();
            if (pcm.syndrome(res.hard) == synd) break;
        }
    }

    res.l_c.resize(pcm.cols());
    res.l_ext2.resize(pcm.cols());
    for (int n = 0; n < pcm.cols(); ++n) {
        double sum_q = 0.0;
        for (int e : store.var_edges(n)) sum_q += store.q[e];
        res.l_ext2[n] = sum_q;
        res.l_c[n] = l_ext1[n] + sum_q;
        res.hard[n] = res.l_c[n] > 0.0 ? 1 : 0;
    }
    res.converged = pcm.syndrome(res.hard) == synd;
    return res;
}

}  // namespace isi2d
