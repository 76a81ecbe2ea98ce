#pragma once

// JSON forms used by the command-line tool. Matrices are {"n", "entries"}
// (or {"rows", "cols", "entries"} when not square) with entries a row-major
// nested array of {"re", "im"} objects; maps are {"n", "images"}.

#include <stdexcept>
#include <string>
#include <string_view>

#include <json.hpp>

#include "tiso/isom.hpp"
#include "tiso/matcore.hpp"
#include "tiso/toeplitz.hpp"

namespace tiso {

using Json = nlohmann::json;

/// Malformed or inconsistent input; the message names where it went wrong.
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Parses JSON text; syntax errors become InputError with line and column.
Json parse_json_text(std::string_view text, const std::string& source);
Json read_json_file(const std::string& path);

Json complex_to_json(Complex z);
/// Accepts {"re", "im"}, [re, im], or a bare number.
Complex complex_from_json(const Json& j);

Json matrix_to_json(const Mat& m);
/// Accepts the object form above; entries may also be a flat row-major list.
Mat matrix_from_json(const Json& j);

Json toeplitz_to_json(const UpperToeplitz& a);

Json map_to_json(const LinearMapA& phi);
/// Accepts a map object, or a report carrying one under payload.map.
LinearMapA map_from_json(const Json& j);

Json tol_to_json(const Tol& tol);

}  // namespace tiso
