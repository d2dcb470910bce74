#pragma once

#include <istream>
#include <string>
#include <vector>

#include <json.hpp>

#include "bioassay/estimation.hpp"
#include "bioassay/fisher.hpp"
#include "bioassay/survival.hpp"
#include "bioassay/tables.hpp"

namespace bioassay::io {

/// Header-selected CSV layouts.
enum class CsvSchema { regression, quantal, survival, binary };

/// Reads the header line and names the schema it matches:
/// u,y | dose,n,events | time,event | x1[,x2],y.
CsvSchema detect_schema(std::istream& in);
CsvSchema detect_schema_file(const std::string& path);
std::string schema_name(CsvSchema s);

// Each reader consumes the header itself and reports errors as "line N: ...".
RegressionDataset read_regression(std::istream& in);
QuantalDataset read_quantal(std::istream& in);
std::vector<SurvivalObs> read_survival(std::istream& in);
BinaryDataset read_binary(std::istream& in);

RegressionDataset read_regression_file(const std::string& path);
QuantalDataset read_quantal_file(const std::string& path);
std::vector<SurvivalObs> read_survival_file(const std::string& path);
BinaryDataset read_binary_file(const std::string& path);

/// "1,2.5,3" -> ParamVector.
ParamVector parse_theta(const std::string& text);

Polyptych read_polyptych(std::istream& in);
Polyptych read_polyptych_file(const std::string& path);
nlohmann::json polyptych_json(const Polyptych& p);

/// Matrix as an array of row arrays.
nlohmann::json matrix_json(const Eigen::MatrixXd& m);
nlohmann::json info_json(const InfoMatrix& info);
nlohmann::json fit_json(const FitResult& fit);
nlohmann::json table_json(const SummaryTable& t);

}  // namespace bioassay::io
