#include "fwer/correlation_matrix.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace fwer {
namespace {

constexpr double kSymmetryTol = 1e-12;
constexpr double kPsdTol = 1e-10;

std::vector<double> cholesky_lower(const std::vector<double>& a, int dim) {
    std::vector<double> l(static_cast<std::size_t>(dim) * dim, 0.0);
    for (int k = 0; k < dim; ++k) {
        double d = a[static_cast<std::size_t>(k) * dim + k];
        for (int j = 0; j < k; ++j) {
            const double lkj = l[static_cast<std::size_t>(k) * dim + j];
            d -= lkj * lkj;
        }
        if (d < -kPsdTol) {
            throw std::invalid_argument("CorrelationMatrix: not positive semidefinite");
        }
        const double diag = d > 0.0 ? std::sqrt(d) : 0.0;
        l[static_cast<std::size_t>(k) * dim + k] = diag;
        for (int i = k + 1; i < dim; ++i) {
            double s = a[static_cast<std::size_t>(i) * dim + k];
            for (int j = 0; j < k; ++j) {
                s -= l[static_cast<std::size_t>(i) * dim + j] *
                     l[static_cast<std::size_t>(k) * dim + j];
            }
            if (diag > 0.0) {
                l[static_cast<std::size_t>(i) * dim + k] = s / diag;
            } else if (std::fabs(s) > 1e-8) {
                throw std::invalid_argument("CorrelationMatrix: not positive semidefinite");
            }
        }
    }
    return l;
}

}  // namespace

CorrelationMatrix::CorrelationMatrix(int dim, std::vector<double> entries,
                                     std::vector<double> factor)
    : dim_(dim), entries_(std::move(entries)), factor_(std::move(factor)) {}

CorrelationMatrix CorrelationMatrix::from_entries(std::vector<std::vector<double>> rows) {
    const int dim = static_cast<int>(rows.size());
    if (dim < 2) {
        throw std::invalid_argument("CorrelationMatrix: dimension must be at least 2");
    }
    std::vector<double> flat(static_cast<std::size_t>(dim) * dim);
    for (int i = 0; i < dim; ++i) {
        if (static_cast<int>(rows[i].size()) != dim) {
            throw std::invalid_argument("CorrelationMatrix: matrix must be square");
        }
        for (int j = 0; j < dim; ++j) {
            const double v = rows[i][j];
            if (!std::isfinite(v)) {
                throw std::invalid_argument("CorrelationMatrix: non-finite entry");
            }
            if (i == j) {
                if (std::fabs(v - 1.0) > kSymmetryTol) {
                    throw std::invalid_argument("CorrelationMatrix: diagonal must be 1");
                }
                flat[static_cast<std::size_t>(i) * dim + j] = 1.0;
            } else {
                if (v < 0.0 || v >= 1.0) {
                    throw std::invalid_argument(
                        "CorrelationMatrix: off-diagonal entries must lie in [0, 1)");
                }
                flat[static_cast<std::size_t>(i) * dim + j] = v;
            }
        }
    }
    for (int i = 0; i < dim; ++i) {
        for (int j = i + 1; j < dim; ++j) {
            const double a = flat[static_cast<std::size_t>(i) * dim + j];
            const double b = flat[static_cast<std::size_t>(j) * dim + i];
            if (std::fabs(a - b) > kSymmetryTol) {
                throw std::invalid_argument("CorrelationMatrix: matrix must be symmetric");
            }
            const double sym = 0.5 * (a + b);
            flat[static_cast<std::size_t>(i) * dim + j] = sym;
            flat[static_cast<std::size_t>(j) * dim + i] = sym;
        }
    }
    auto factor = cholesky_lower(flat, dim);
    return CorrelationMatrix(dim, std::move(flat), std::move(factor));
}

CorrelationMatrix CorrelationMatrix::equicorrelated(int dim, double rho) {
    if (rho < 0.0 || rho >= 1.0) {
        throw std::invalid_argument("CorrelationMatrix: equicorrelation must lie in [0, 1)");
    }
    std::vector<std::vector<double>> rows(dim, std::vector<double>(dim, rho));
    for (int i = 0; i < dim; ++i) rows[i][i] = 1.0;
    return from_entries(std::move(rows));
}

CorrelationMatrix CorrelationMatrix::from_csv(std::string_view text) {
    std::vector<std::vector<double>> rows;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t eol = text.find('\n', pos);
        std::string_view line =
            text.substr(pos, eol == std::string_view::npos ? std::string_view::npos : eol - pos);
        pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
        ++line_no;

        bool blank = true;
        for (char c : line) {
            if (!std::isspace(static_cast<unsigned char>(c))) { blank = false; break; }
        }
        if (blank) continue;

        std::vector<double> row;
        std::size_t col_no = 0;
        std::size_t field_start = 0;
        while (field_start <= line.size()) {
            const std::size_t comma = line.find(',', field_start);
            std::string field(line.substr(
                field_start,
                comma == std::string_view::npos ? std::string_view::npos : comma - field_start));
            field_start = comma == std::string_view::npos ? line.size() + 1 : comma + 1;
            ++col_no;

            const char* begin = field.c_str();
            char* end = nullptr;
            const double v = std::strtod(begin, &end);
            while (end && *end != '\0' && std::isspace(static_cast<unsigned char>(*end))) ++end;
            if (end == begin || (end && *end != '\0')) {
                std::ostringstream msg;
                msg << "CorrelationMatrix: parse error at row " << line_no << ", column "
                    << col_no << ": '" << field << "'";
                throw std::invalid_argument(msg.str());
            }
            row.push_back(v);
        }
        rows.push_back(std::move(row));
    }
    if (rows.empty()) {
        throw std::invalid_argument("CorrelationMatrix: empty CSV input");
    }
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != rows.size()) {
            std::ostringstream msg;
            msg << "CorrelationMatrix: row " << (i + 1) << " has " << rows[i].size()
                << " values, expected " << rows.size();
            throw std::invalid_argument(msg.str());
        }
    }
    return from_entries(std::move(rows));
}

CorrelationMatrix CorrelationMatrix::from_csv_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::invalid_argument("CorrelationMatrix: cannot open '" + path + "'");
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return from_csv(buffer.str());
}

RowStats row_stats(const CorrelationMatrix& m) {
    const int dim = m.dim();
    RowStats stats;
    double best_sum = -1.0;
    for (int i = 0; i < dim; ++i) {
        double sum = 0.0;
        for (int j = 0; j < dim; ++j) {
            if (j != i) sum += m.at(i, j);
        }
        if (sum > best_sum) {
            best_sum = sum;
            stats.istar = i;
        }
    }
    stats.rho_bar = best_sum / (dim - 1);

    double min_val = 2.0;
    for (int j = 0; j < dim; ++j) {
        if (j == stats.istar) continue;
        const double v = m.at(stats.istar, j);
        if (v < min_val) {
            min_val = v;
            stats.jstar = j;
        }
    }
    stats.rho_min = min_val;
    return stats;
}

}  // namespace fwer
