#include "disksym/circle_space.hpp"

#include <cmath>
#include <sstream>

#include <unsupported/Eigen/FFT>

namespace disksym {

TrigPoly::TrigPoly(int N) : order(N) {
    if (N < 1) throw std::invalid_argument("TrigPoly: order must be >= 1");
    coeffs = Eigen::VectorXcd::Zero(2 * N + 1);
}

TrigPoly TrigPoly::delta(int n, int N) {
    TrigPoly f(N);
    f.set_coeff(n, 1.0);
    return f;
}

cplx TrigPoly::coeff(int n) const {
    if (n < -order || n > order) return 0.0;
    return coeffs(n + order);
}

void TrigPoly::set_coeff(int n, cplx v) {
    if (n < -order || n > order)
        throw std::out_of_range("TrigPoly::set_coeff: index outside [-N, N]");
    coeffs(n + order) = v;
}

int next_pow2(int n) {
    int m = 1;
    while (m < n) m <<= 1;
    return m;
}

SampleGrid::SampleGrid(int M) : size(M) {
    if (M < 2 || (M & (M - 1)) != 0)
        throw std::invalid_argument("SampleGrid: size must be a power of two >= 2");
    nodes.reserve(M);
    for (int j = 0; j < M; ++j)
        nodes.push_back(std::polar(1.0, 2.0 * M_PI * j / M));
}

SampleGrid SampleGrid::for_order(int order, int oversample) {
    return SampleGrid(next_pow2(oversample * (2 * order + 1)));
}

namespace {

void fft_forward(std::vector<cplx>& data) {
    static thread_local Eigen::FFT<double> fft;
    std::vector<cplx> out(data.size());
    fft.fwd(out, data);
    data.swap(out);
}

void fft_inverse_unscaled(std::vector<cplx>& data) {
    // unscaled inverse DFT: y[j] = sum_k x[k] e^{+2 pi i jk/M}
    for (auto& v : data) v = std::conj(v);
    fft_forward(data);
    for (auto& v : data) v = std::conj(v);
}

} // namespace

std::vector<cplx> synthesize(const TrigPoly& f, const SampleGrid& g) {
    const int M = g.size;
    if (M < 2 * f.order + 1)
        throw GridTooSmall("synthesize: grid size below 2N+1");
    std::vector<cplx> freq(M, 0.0);
    for (int n = -f.order; n <= f.order; ++n) {
        const int k = ((n % M) + M) % M;
        freq[k] += f.coeff(n);
    }
    fft_inverse_unscaled(freq);
    return freq;
}

TrigPoly analyze(const std::vector<cplx>& samples, int order) {
    const int M = static_cast<int>(samples.size());
    if (M < 2 * order + 1)
        throw GridTooSmall("analyze: grid size below 2N+1");
    std::vector<cplx> freq = samples;
    fft_forward(freq);
    TrigPoly f(order);
    for (int n = -order; n <= order; ++n) {
        const int k = ((n % M) + M) % M;
        f.set_coeff(n, freq[k] / static_cast<double>(M));
    }
    return f;
}

cplx eval_at(const TrigPoly& f, const CirclePoint& z) {
    // Horner in z for n >= 0 and in conj(z) for n < 0
    const int N = f.order;
    cplx pos = 0.0;
    for (int n = N; n >= 0; --n) pos = pos * z.value + f.coeff(n);
    const cplx zb = std::conj(z.value);
    cplx neg = 0.0;
    for (int n = -N; n <= -1; ++n) neg = neg * zb + f.coeff(n);
    return pos + neg * zb;
}

TrigPoly pointwise_mul(const TrigPoly& f, const TrigPoly& h) {
    const int order = f.order + h.order;
    SampleGrid g = SampleGrid::for_order(order, 2);
    std::vector<cplx> a = synthesize(f, g);
    std::vector<cplx> b = synthesize(h, g);
    for (int j = 0; j < g.size; ++j) a[j] *= b[j];
    return analyze(a, order);
}

TrigPoly parity_project(const TrigPoly& f, Parity p) {
    TrigPoly out(f.order);
    for (int n = -f.order; n <= f.order; ++n) {
        const bool even = ((n % 2) == 0);
        if ((p == Parity::even) == even) out.set_coeff(n, f.coeff(n));
    }
    return out;
}

cplx inner_product(const TrigPoly& f, const TrigPoly& h) {
    const int N = std::min(f.order, h.order);
    cplx s = 0.0;
    for (int n = -N; n <= N; ++n) s += f.coeff(n) * std::conj(h.coeff(n));
    return s;
}

std::string to_csv(const TrigPoly& f) {
    std::ostringstream os;
    os.precision(17);
    os << "n,re,im\n";
    for (int n = -f.order; n <= f.order; ++n)
        os << n << ',' << f.coeff(n).real() << ',' << f.coeff(n).imag() << '\n';
    return os.str();
}

TrigPoly from_csv(const std::string& text) {
    std::istringstream is(text);
    std::string line;
    std::getline(is, line); // header
    std::vector<std::pair<int, cplx>> rows;
    int maxn = 1;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string tok;
        std::getline(ls, tok, ',');
        const int n = std::stoi(tok);
        std::getline(ls, tok, ',');
        const double re = std::stod(tok);
        std::getline(ls, tok, ',');
        const double im = std::stod(tok);
        rows.emplace_back(n, cplx(re, im));
        maxn = std::max(maxn, std::abs(n));
    }
    TrigPoly f(maxn);
    for (auto& [n, v] : rows) f.set_coeff(n, v);
    return f;
}

} // namespace disksym
