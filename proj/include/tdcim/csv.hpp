#pragma once

#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace tdcim {

// Small deterministic CSV emitter. Doubles are printed as %.9e so runs with
// identical inputs produce byte-identical files regardless of locale quirks
// or accumulated formatting state.
class CsvWriter {
 public:
    explicit CsvWriter(const std::string& path) : out_(path) {
        if (!out_) throw std::runtime_error("csv: cannot open \"" + path + "\"");
    }

    void comment(const std::string& line) { out_ << "# " << line << "\n"; }

    void header(const std::vector<std::string>& names) { row_of_strings(names); }

    void row_of_strings(const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) out_ << ',';
            out_ << cells[i];
        }
        out_ << '\n';
    }

    static std::string num(double v) {
        char buf[40];
        std::snprintf(buf, sizeof(buf), "%.9e", v);
        return buf;
    }

    static std::string num(std::size_t v) { return std::to_string(v); }
    static std::string num(int v) { return std::to_string(v); }

 private:
    std::ofstream out_;
};

} // namespace tdcim
