#include "cbpenta/system_io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <utility>

namespace cbpenta {

namespace {

/// Whitespace-token reader that tracks the current 1-based line number
/// for error reporting.
class Tokenizer {
public:
    explicit Tokenizer(std::istream& in) : in_(in) {}

    int line() const noexcept { return line_; }

    bool next(std::string& tok) {
        tok.clear();
        int c;
        while ((c = in_.get()) != EOF) {
            if (c == '\n') {
                if (!tok.empty()) {
                    in_.unget();
                    return true;
                }
                ++line_;
            } else if (c == ' ' || c == '\t' || c == '\r' || c == '\v' || c == '\f') {
                if (!tok.empty()) return true;
            } else {
                tok.push_back(static_cast<char>(c));
            }
        }
        return !tok.empty();
    }

    std::string expect(const char* what) {
        std::string tok;
        if (!next(tok)) throw ParseError(std::string("unexpected end of input, expected ") + what, line_);
        return tok;
    }

    double expect_real(const char* what) {
        const std::string tok = expect(what);
        char* end = nullptr;
        const double v = std::strtod(tok.c_str(), &end);
        if (end != tok.c_str() + tok.size())
            throw ParseError("invalid real '" + tok + "' for " + what, line_);
        if (!std::isfinite(v))
            throw ParseError("non-finite value '" + tok + "' for " + what, line_);
        return v;
    }

    long expect_int(const char* what) {
        const std::string tok = expect(what);
        char* end = nullptr;
        const long v = std::strtol(tok.c_str(), &end, 10);
        if (end != tok.c_str() + tok.size())
            throw ParseError("invalid integer '" + tok + "' for " + what, line_);
        return v;
    }

    void expect_end() {
        std::string tok;
        if (next(tok)) throw ParseError("unexpected trailing data '" + tok + "'", line_);
    }

private:
    std::istream& in_;
    int line_ = 1;
};

Block read_block(Tokenizer& tk, int m, const char* what) {
    Block blk(m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) blk(i, j) = tk.expect_real(what);
    return blk;
}

void write_block(std::ostream& out, const Block& blk) {
    const int m = blk.dim();
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < m; ++j) {
            if (j) out << ' ';
            out << format_real17(blk(i, j));
        }
        out << '\n';
    }
}

void read_header(Tokenizer& tk, const char* magic, int& m, int& n) {
    const std::string tag = tk.expect("format magic");
    if (tag != magic) throw ParseError("bad magic '" + tag + "', expected '" + magic + "'", tk.line());
    const long version = tk.expect_int("format version");
    if (version != 1)
        throw ParseError("unsupported format version " + std::to_string(version), tk.line());
    const long ml = tk.expect_int("m");
    const long nl = tk.expect_int("n");
    if (ml < 1) throw ParseError("m must be >= 1", tk.line());
    if (nl < 5) throw ParseError("n must be >= 5", tk.line());
    if (ml > 4096 || nl > 100000000L)
        throw ParseError("header dimensions out of range", tk.line());
    m = static_cast<int>(ml);
    n = static_cast<int>(nl);
}

}  // namespace

std::string format_real17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

SystemData read_system(std::istream& in) {
    Tokenizer tk(in);
    int m = 0, n = 0;
    read_header(tk, "cbpenta", m, n);

    Bands bands;
    bands.a.reserve(n);
    bands.b.reserve(n);
    bands.c.reserve(n);
    bands.d.reserve(n);
    bands.e.reserve(n);
    for (int k = 0; k < n; ++k) {
        bands.a.push_back(read_block(tk, m, "band A"));
        bands.b.push_back(read_block(tk, m, "band B"));
        bands.c.push_back(read_block(tk, m, "band C"));
        bands.d.push_back(read_block(tk, m, "band D"));
        bands.e.push_back(read_block(tk, m, "band E"));
    }
    BlockVector f(m, n);
    for (int k = 0; k < n; ++k)
        for (double& x : f.block(k)) x = tk.expect_real("rhs f");
    tk.expect_end();

    return SystemData{BlockPentaCyclic::from_bands(std::move(bands)), std::move(f)};
}

void write_system(std::ostream& out, const BlockPentaCyclic& mat, const BlockVector& f) {
    out << "cbpenta 1\n" << mat.m() << ' ' << mat.n() << '\n';
    for (int k = 0; k < mat.n(); ++k) {
        for (const Block* blk : {&mat.a(k), &mat.b(k), &mat.c(k), &mat.d(k), &mat.e(k)}) {
            out << '\n';
            write_block(out, *blk);
        }
    }
    out << '\n';
    for (int k = 0; k < f.n(); ++k) {
        auto row = f.block(k);
        for (int i = 0; i < f.m(); ++i) {
            if (i) out << ' ';
            out << format_real17(row[static_cast<std::size_t>(i)]);
        }
        out << '\n';
    }
}

BlockVector read_solution(std::istream& in) {
    Tokenizer tk(in);
    int m = 0, n = 0;
    read_header(tk, "cbpenta-solution", m, n);
    BlockVector x(m, n);
    for (int k = 0; k < n; ++k)
        for (double& v : x.block(k)) v = tk.expect_real("solution entry");
    tk.expect_end();
    return x;
}

void write_solution(std::ostream& out, const BlockVector& x) {
    out << "cbpenta-solution 1\n" << x.m() << ' ' << x.n() << '\n';
    for (int k = 0; k < x.n(); ++k) {
        auto row = x.block(k);
        for (int i = 0; i < x.m(); ++i) {
            if (i) out << ' ';
            out << format_real17(row[static_cast<std::size_t>(i)]);
        }
        out << '\n';
    }
}

SystemData read_system_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
    return read_system(in);
}

void write_system_file(const std::filesystem::path& path, const BlockPentaCyclic& mat,
                       const BlockVector& f) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
    write_system(out, mat, f);
    out.flush();
    if (!out) throw IoError("write failed for '" + path.string() + "'");
}

BlockVector read_solution_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
    return read_solution(in);
}

void write_solution_file(const std::filesystem::path& path, const BlockVector& x) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
    write_solution(out, x);
    out.flush();
    if (!out) throw IoError("write failed for '" + path.string() + "'");
}

}  // namespace cbpenta
