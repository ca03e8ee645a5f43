#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "ptreal/antiunitary.hpp"
#include "ptreal/oscillator_basis.hpp"
#include "ptreal/realify.hpp"
#include "ptreal/spectra.hpp"

namespace ptreal {

/// Shortest decimal string that round-trips to the same double.
std::string format_double(double x);

// {"n": N, "basis": "ho", "entries_re": [[...]], "entries_im": [[...]]}
std::string operator_matrix_to_json(const OperatorMatrix& m);
OperatorMatrix operator_matrix_from_json(const std::string& text);

// {"n": N, "w_re": [[...]], "w_im": [[...]]}
std::string antiunitary_to_json(const AntiunitaryRep& a);
AntiunitaryRep antiunitary_from_json(const std::string& text);

// {"n": N, "entries": [[...]], "imag_residual": f, "source_label": s}
std::string real_matrix_to_json(const RealMatrix& m);
RealMatrix real_matrix_from_json(const std::string& text);

// {"n": N, "eigenvalues": [{"re","im"}], "real_set": [...], "pairs": [[{..},{..}]],
//  "tol_classify": f, "backward_error": f}
std::string spectrum_report_to_json(const SpectrumReport& r);

// N,level,re,im,cauchy_diff
std::string sweep_to_csv(const std::vector<SweepRow>& rows);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace ptreal
