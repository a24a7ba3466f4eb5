#include "pgiso/text_io.hpp"

#include <fstream>
#include <sstream>

#include "pgiso/error.hpp"

namespace pgiso {

namespace {

long long next_int(std::istream& in, const char* what) {
    long long v;
    if (!(in >> v)) throw Error(ErrorCode::ParseError, std::string("expected ") + what);
    return v;
}

Prime read_prime(std::istream& in) {
    long long p = next_int(in, "prime");
    if (p < 3 || p > (1LL << 30) || !is_prime(static_cast<std::uint64_t>(p)))
        throw Error(ErrorCode::ParseError, "p = " + std::to_string(p) + " is not an odd prime");
    return Prime(static_cast<std::uint32_t>(p));
}

std::size_t read_size(std::istream& in, const char* what) {
    long long v = next_int(in, what);
    if (v < 0 || v > 4096) throw Error(ErrorCode::ParseError, std::string("bad ") + what);
    return static_cast<std::size_t>(v);
}

FpMatrix read_body(std::istream& in, Prime p, std::size_t rows, std::size_t cols) {
    FpMatrix a(p, rows, cols);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c) {
            long long v = next_int(in, "matrix entry");
            if (v < 0 || v >= p.value())
                throw Error(ErrorCode::ParseError, "entry " + std::to_string(v) + " outside [0, p)");
            a.at(r, c) = static_cast<std::uint32_t>(v);
        }
    return a;
}

void write_body(std::ostream& out, const FpMatrix& a) {
    for (std::size_t r = 0; r < a.rows(); ++r) {
        for (std::size_t c = 0; c < a.cols(); ++c) out << (c ? " " : "") << a(r, c);
        out << "\n";
    }
}

void expect_end(std::istream& in) {
    std::string extra;
    if (in >> extra) throw Error(ErrorCode::ParseError, "trailing data: " + extra);
}

FpMatrix read_matrix(std::istream& in) {
    Prime p = read_prime(in);
    std::size_t rows = read_size(in, "rows"), cols = read_size(in, "cols");
    return read_body(in, p, rows, cols);
}

}  // namespace

FpMatrix parse_matrix(const std::string& text) {
    std::istringstream in(text);
    FpMatrix a = read_matrix(in);
    expect_end(in);
    return a;
}

std::string write_matrix(const FpMatrix& a) {
    std::ostringstream out;
    out << a.p() << " " << a.rows() << " " << a.cols() << "\n";
    write_body(out, a);
    return out.str();
}

MatrixSpace parse_space(const std::string& text) {
    std::istringstream in(text);
    Prime p = read_prime(in);
    std::size_t m = read_size(in, "m"), n = read_size(in, "n"), d = read_size(in, "d");
    std::vector<FpMatrix> mats;
    for (std::size_t i = 0; i < d; ++i) mats.push_back(read_body(in, p, m, n));
    expect_end(in);
    MatrixSpace s = span_from_generators(p, m, n, mats);
    if (s.dim() != d) throw Error(ErrorCode::ParseError, "space basis is linearly dependent");
    return s;
}

std::string write_space(const MatrixSpace& s) {
    std::ostringstream out;
    out << s.p() << " " << s.rows() << " " << s.cols() << " " << s.dim() << "\n";
    for (const auto& b : s.basis()) write_body(out, b);
    return out.str();
}

SkewTensor parse_tensor(const std::string& text) {
    std::istringstream in(text);
    Prime p = read_prime(in);
    std::size_t m = read_size(in, "m"), n = read_size(in, "n");
    if (m == 0) throw Error(ErrorCode::ParseError, "tensor needs m >= 1");
    std::vector<FpMatrix> xs;
    for (std::size_t i = 0; i < m; ++i) {
        xs.push_back(read_body(in, p, n, n));
        if (!xs.back().is_skew()) throw Error(ErrorCode::NotSkew, "block " + std::to_string(i + 1) + " is not skew");
    }
    expect_end(in);
    return SkewTensor::from_slices(xs);
}

std::string write_tensor(const SkewTensor& t) {
    std::ostringstream out;
    out << t.p() << " " << t.m() << " " << t.n() << "\n";
    for (const auto& x : t.x_slices()) write_body(out, x);
    return out.str();
}

MatrixTuple parse_tuple(const std::string& text) {
    std::istringstream in(text);
    Prime p = read_prime(in);
    std::size_t dim = read_size(in, "dim"), k = read_size(in, "k");
    MatrixTuple t;
    for (std::size_t i = 0; i < k; ++i) t.push_back(read_body(in, p, dim, dim));
    expect_end(in);
    return t;
}

std::string write_tuple(const MatrixTuple& t) {
    std::ostringstream out;
    if (t.empty()) throw Error(ErrorCode::InvalidArgument, "cannot write an empty tuple");
    out << t[0].p() << " " << t[0].rows() << " " << t.size() << "\n";
    for (const auto& a : t) write_body(out, a);
    return out.str();
}

std::pair<FpMatrix, FpMatrix> parse_witness(const std::string& text) {
    std::istringstream in(text);
    FpMatrix n = read_matrix(in);
    FpMatrix m = read_matrix(in);
    expect_end(in);
    return {n, m};
}

std::string write_witness(const FpMatrix& n, const FpMatrix& m) { return write_matrix(n) + write_matrix(m); }

std::string read_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw Error(ErrorCode::ParseError, "cannot read " + path);
    std::ostringstream s;
    s << f.rdbuf();
    return s.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream f(path);
    if (!f) throw Error(ErrorCode::InvalidArgument, "cannot write " + path);
    f << text;
}

}  // namespace pgiso
