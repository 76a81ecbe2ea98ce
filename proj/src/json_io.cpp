#include "tiso/json_io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace tiso {

namespace {

std::size_t size_field(const Json& j, const char* key) {
    if (!j.contains(key)) throw InputError(std::string("missing field \"") + key + "\"");
    const Json& v = j.at(key);
    if (!v.is_number_integer() || v.get<long long>() < 0)
        throw InputError(std::string("field \"") + key + "\" must be a nonnegative integer");
    return v.get<std::size_t>();
}

Mat entries_to_matrix(const Json& entries, std::size_t rows, std::size_t cols, const std::string& where) {
    if (!entries.is_array()) throw InputError(where + ": entries must be an array");
    std::vector<Complex> data;
    data.reserve(rows * cols);
    // Nested rows are `rows` arrays of length `cols`; the flat form has
    // rows * cols scalars. With one column a nested row has length one, which
    // no complex scalar form has.
    const bool nested = rows > 0 && entries.size() == rows &&
                        std::all_of(entries.begin(), entries.end(),
                                    [&](const Json& r) { return r.is_array() && r.size() == cols; });
    if (nested) {
        if (entries.size() != rows)
            throw InputError(where + ": expected " + std::to_string(rows) + " rows, got " +
                             std::to_string(entries.size()));
        for (std::size_t i = 0; i < rows; ++i) {
            const Json& row = entries[i];
            if (!row.is_array() || row.size() != cols)
                throw InputError(where + ": row " + std::to_string(i) + " must have " + std::to_string(cols) +
                                 " entries");
            for (const auto& z : row) data.push_back(complex_from_json(z));
        }
    } else {
        if (entries.size() != rows * cols)
            throw InputError(where + ": expected " + std::to_string(rows * cols) + " entries, got " +
                             std::to_string(entries.size()));
        for (const auto& z : entries) data.push_back(complex_from_json(z));
    }
    try {
        return Mat(rows, cols, std::move(data));
    } catch (const std::exception& e) {
        throw InputError(where + ": " + e.what());
    }
}

}  // namespace

Json parse_json_text(std::string_view text, const std::string& source) {
    try {
        return Json::parse(text.begin(), text.end());
    } catch (const Json::parse_error& e) {
        // nlohmann reports "at line L, column C"; keep that and add the byte offset.
        throw InputError(source + ": JSON parse error at byte " + std::to_string(e.byte) + ": " + e.what());
    }
}

Json read_json_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError(path + ": cannot open file");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_json_text(buf.str(), path);
}

Json complex_to_json(Complex z) { return Json{{"re", z.real()}, {"im", z.imag()}}; }

Complex complex_from_json(const Json& j) {
    if (j.is_number()) return {j.get<double>(), 0.0};
    if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
        return {j[0].get<double>(), j[1].get<double>()};
    if (j.is_object() && j.contains("re") && j.at("re").is_number()) {
        double im = 0.0;
        if (j.contains("im")) {
            if (!j.at("im").is_number()) throw InputError("\"im\" must be a number");
            im = j.at("im").get<double>();
        }
        return {j.at("re").get<double>(), im};
    }
    throw InputError("expected a complex number ({\"re\", \"im\"}), got " + j.dump());
}

Json matrix_to_json(const Mat& m) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(complex_to_json(m(i, j)));
        rows.push_back(std::move(row));
    }
    if (m.is_square()) return Json{{"n", m.rows()}, {"entries", std::move(rows)}};
    return Json{{"rows", m.rows()}, {"cols", m.cols()}, {"entries", std::move(rows)}};
}

Mat matrix_from_json(const Json& j) {
    if (!j.is_object()) throw InputError("matrix must be a JSON object");
    if (!j.contains("entries")) throw InputError("matrix: missing field \"entries\"");
    std::size_t rows = 0;
    std::size_t cols = 0;
    if (j.contains("n")) {
        rows = cols = size_field(j, "n");
    } else {
        rows = size_field(j, "rows");
        cols = size_field(j, "cols");
    }
    return entries_to_matrix(j.at("entries"), rows, cols, "matrix");
}

Json toeplitz_to_json(const UpperToeplitz& a) {
    Json coeffs = Json::array();
    for (const auto& c : a.coeffs()) coeffs.push_back(complex_to_json(c));
    return Json{{"n", a.size()}, {"coeffs", std::move(coeffs)}};
}

Json map_to_json(const LinearMapA& phi) {
    Json images = Json::array();
    for (const auto& m : phi.images()) images.push_back(matrix_to_json(m).at("entries"));
    return Json{{"n", phi.size()}, {"images", std::move(images)}};
}

LinearMapA map_from_json(const Json& j) {
    if (!j.is_object()) throw InputError("map must be a JSON object");
    if (j.contains("payload") && j.at("payload").is_object() && j.at("payload").contains("map"))
        return map_from_json(j.at("payload").at("map"));
    const std::size_t n = size_field(j, "n");
    if (n == 0) throw InputError("map: n must be positive");
    if (!j.contains("images") || !j.at("images").is_array()) throw InputError("map: missing array \"images\"");
    const Json& images = j.at("images");
    if (images.size() != n)
        throw InputError("map: expected " + std::to_string(n) + " images, got " + std::to_string(images.size()));
    std::vector<Mat> mats;
    mats.reserve(n);
    for (std::size_t k = 0; k < n; ++k) {
        const Json& img = images[k];
        const std::string where = "map image " + std::to_string(k);
        if (img.is_object()) {
            Mat m = matrix_from_json(img);
            if (m.rows() != n || m.cols() != n)
                throw InputError(where + ": expected " + std::to_string(n) + "x" + std::to_string(n));
            mats.push_back(std::move(m));
        } else {
            mats.push_back(entries_to_matrix(img, n, n, where));
        }
    }
    return LinearMapA(std::move(mats));
}

Json tol_to_json(const Tol& tol) {
    return Json{{"eps_rank", tol.eps_rank}, {"eps_residual", tol.eps_residual}, {"eps_eq", tol.eps_eq}};
}

}  // namespace tiso
