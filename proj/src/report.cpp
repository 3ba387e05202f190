#include "skewloc/report.hpp"

#include <cstdio>
#include <stdexcept>

namespace skewloc {

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string fmt_hex(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%a", v);
    return buf;
}

void CsvTable::add_col(const std::string& name, bool is_float) {
    header_.push_back(name);
    is_float_.push_back(is_float);
    if (is_float) {
        header_.push_back(name + "_hex");
        is_float_.push_back(false); // emitted together with the float cell
    }
}

void CsvTable::begin_row() {
    if (row_open_) throw std::logic_error("CsvTable: previous row not finished");
    col_ = 0;
    row_open_ = true;
}

void CsvTable::put(std::int64_t v) {
    if (!row_open_) throw std::logic_error("CsvTable: no open row");
    if (col_ > 0) body_ += ',';
    body_ += std::to_string(v);
    ++col_;
    if (col_ == header_.size()) {
        body_ += '\n';
        row_open_ = false;
        ++n_rows_;
    }
}

void CsvTable::put(double v) {
    if (!row_open_) throw std::logic_error("CsvTable: no open row");
    if (col_ > 0) body_ += ',';
    body_ += fmt_double(v);
    body_ += ',';
    body_ += fmt_hex(v);
    col_ += 2;
    if (col_ == header_.size()) {
        body_ += '\n';
        row_open_ = false;
        ++n_rows_;
    }
}

void CsvTable::put(const std::string& v) {
    if (!row_open_) throw std::logic_error("CsvTable: no open row");
    if (col_ > 0) body_ += ',';
    body_ += v;
    ++col_;
    if (col_ == header_.size()) {
        body_ += '\n';
        row_open_ = false;
        ++n_rows_;
    }
}

std::string CsvTable::str() const {
    std::string out;
    for (std::size_t i = 0; i < header_.size(); ++i) {
        if (i > 0) out += ',';
        out += header_[i];
    }
    out += '\n';
    out += body_;
    return out;
}

} // namespace skewloc
