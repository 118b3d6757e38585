#include "lqrl/trajectory.hpp"

#include <cstdio>
#include <cstdlib>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "lqrl/errors.hpp"

namespace lqrl {

namespace {
constexpr const char* kHeader = "t,z,v_r,v_e,u,a_l,V,Vdot";
constexpr std::size_t kColumns = 8;
}  // namespace

void TrajectoryLog::push_row(double t_, double z_, double v_r_, double v_e_, double u_,
                             double a_l_, double v_, double vdot_) {
    t.push_back(t_);
    z.push_back(z_);
    v_r.push_back(v_r_);
    v_e.push_back(v_e_);
    u.push_back(u_);
    a_l.push_back(a_l_);
    v.push_back(v_);
    vdot.push_back(vdot_);
}

void TrajectoryLog::validate() const {
    const std::size_t n = t.size();
    if (z.size() != n || v_r.size() != n || v_e.size() != n || u.size() != n ||
        a_l.size() != n || v.size() != n || vdot.size() != n) {
        throw ConfigError("TrajectoryLog: column length mismatch");
    }
    for (std::size_t i = 1; i < n; ++i) {
        if (!(t[i] > t[i - 1])) throw ConfigError("TrajectoryLog: time not strictly increasing");
    }
}

std::string format_double(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

void write_csv(const TrajectoryLog& log, std::ostream& os) {
    log.validate();
    os << kHeader << '\n';
    for (std::size_t i = 0; i < log.size(); ++i) {
        os << format_double(log.t[i]) << ',' << format_double(log.z[i]) << ','
           << format_double(log.v_r[i]) << ',' << format_double(log.v_e[i]) << ','
           << format_double(log.u[i]) << ',' << format_double(log.a_l[i]) << ','
           << format_double(log.v[i]) << ',' << format_double(log.vdot[i]) << '\n';
    }
}

namespace {

double parse_field(const std::string& field, std::size_t line_no, std::size_t col) {
    const char* begin = field.c_str();
    char* end = nullptr;
    const double value = std::strtod(begin, &end);
    if (end == begin || *end != '\0') {
        std::ostringstream oss;
        oss << "CSV row " << line_no << ", column " << (col + 1) << ": cannot parse '"
            << field << "' as a number";
        throw IoError(oss.str());
    }
    return value;
}

}  // namespace

TrajectoryLog read_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line)) throw IoError("CSV: empty file (missing header)");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != kHeader) {
        throw IoError("CSV row 1: expected header '" + std::string(kHeader) + "', got '" +
                      line + "'");
    }
    TrajectoryLog log;
    std::size_t line_no = 1;
    while (std::getline(is, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        double fields[kColumns];
        std::size_t col = 0;
        std::size_t start = 0;
        while (true) {
            const std::size_t comma = line.find(',', start);
            const std::string field = line.substr(
                start, comma == std::string::npos ? std::string::npos : comma - start);
            if (col >= kColumns) {
                std::ostringstream oss;
                oss << "CSV row " << line_no << ": more than " << kColumns << " columns";
                throw IoError(oss.str());
            }
            fields[col] = parse_field(field, line_no, col);
            ++col;
            if (comma == std::string::npos) break;
            start = comma + 1;
        }
        if (col != kColumns) {
            std::ostringstream oss;
            oss << "CSV row " << line_no << ": expected " << kColumns << " columns, got "
                << col;
            throw IoError(oss.str());
        }
        log.push_row(fields[0], fields[1], fields[2], fields[3], fields[4], fields[5],
                     fields[6], fields[7]);
    }
    if (log.empty()) throw IoError("CSV: no data rows");
    log.validate();
    return log;
}

}  // namespace lqrl
