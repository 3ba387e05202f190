#pragma once

#include <string>
#include <vector>

namespace skewloc {

std::string fmt_double(double v); // %.17g
std::string fmt_hex(double v);    // %a

// Deterministic CSV accumulator. Float columns are expanded into a decimal
// column plus a "<name>_hex" column.
class CsvTable {
  public:
    void int_col(const std::string& name) { add_col(name, false); }
    void float_col(const std::string& name) { add_col(name, true); }
    void str_col(const std::string& name) { add_col(name, false); }

    void begin_row();
    void put(std::int64_t v);
    void put(double v);
    void put(const std::string& v);

    std::int64_t rows() const { return n_rows_; }
    std::string str() const;

  private:
    void add_col(const std::string& name, bool is_float);
    std::vector<std::string> header_;
    std::vector<bool> is_float_;
    std::string body_;
    std::size_t col_ = 0;
    std::int64_t n_rows_ = 0;
    bool row_open_ = false;
};

} // namespace skewloc
