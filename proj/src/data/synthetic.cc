/*
 * Copyright 2026 The rankfaith Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "rankfaith/data/synthetic.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <string_view>

#include "nlohmann/json.hpp"
#include "rankfaith/util/rng.h"

namespace rankfaith::data {

namespace {

template <std::size_t N>
struct Categorical {
  std::array<std::string_view, N> levels;
  std::array<double, N> weights;

  std::string_view Draw(util::Rng& rng) const {
    double total = 0;
    for (double w : weights) total += w;
    double u = rng.Uniform() * total;
    for (std::size_t i = 0; i < N; ++i) {
      if (u < weights[i]) return levels[i];
      u -= weights[i];
    }
    return levels[N - 1];
  }
};

constexpr Categorical<14> kPurpose{
    {"debt_consolidation", "credit_card", "other", "home_improvement", "major_purchase",
     "small_business", "car", "wedding", "medical", "moving", "vacation", "house",
     "educational", "renewable_energy"},
    {47, 13, 10, 7, 5.5, 4.6, 3.9, 2.4, 1.7, 1.5, 1.0, 1.0, 0.8, 0.3}};

constexpr Categorical<5> kHome{{"RENT", "MORTGAGE", "OWN", "OTHER", "NONE"},
                               {48, 44, 7.5, 0.3, 0.1}};

constexpr Categorical<3> kVerification{{"Not Verified", "Verified", "Source Verified"},
                                       {43, 32, 25}};

constexpr Categorical<16> kState{
    {"CA", "NY", "FL", "TX", "NJ", "IL", "PA", "VA", "GA", "MA", "OH", "MD", "AZ", "WA",
     "CO", "NV"},
    {18, 9.5, 7.2, 6.9, 4.7, 3.9, 3.8, 3.6, 3.5, 3.4, 3.1, 2.7, 2.2, 2.1, 2.0, 1.3}};

constexpr Categorical<12> kEmpTitle{
    {"", "Teacher", "Registered Nurse", "Manager", "Project Manager", "Engineer",
     "Software Developer", "Truck Driver", "Driver", "Owner", "Self Employed", "Sales"},
    {6, 6, 5, 8, 4, 4, 3, 3, 2, 4, 3, 6}};

constexpr Categorical<12> kEmpLength{
    {"< 1 year", "1 year", "2 years", "3 years", "4 years", "5 years", "6 years", "7 years",
     "8 years", "9 years", "10+ years", "n/a"},
    {11.6, 8.2, 11.1, 10.3, 8.7, 8.3, 5.6, 4.5, 3.7, 3.2, 22.3, 2.5}};

constexpr std::array<std::string_view, 7> kGrades{"A", "B", "C", "D", "E", "F", "G"};
constexpr std::array<double, 7> kGradeRate{7.4, 11.0, 13.6, 15.8, 17.9, 19.9, 21.6};

std::string Num(double v, int decimals) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.*f", decimals, v);
  return buf;
}

double Sigmoid(double z) { return 1.0 / (1.0 + std::exp(-z)); }

int Poisson(util::Rng& rng, double mean) {
  const double limit = std::exp(-mean);
  int k = 0;
  double p = rng.Uniform();
  while (p > limit) {
    ++k;
    p *= rng.Uniform();
  }
  return k;
}

constexpr const char* kHeader =
    "id,member_id,loan_amnt,term,int_rate,installment,grade,emp_title,emp_length,"
    "home_ownership,annual_inc,verification_status,loan_status,purpose,addr_state,dti,"
    "delinq_2yrs,fico_range_low,inq_last_6mths,mths_since_last_delinq,open_acc,pub_rec,"
    "revol_bal,revol_util,total_acc,credit_history_years,pub_rec_bankruptcies,total_pymnt,"
    "recoveries,policy_code,next_pymnt_d,url\n";

constexpr const char* kSchemaJson = R"json({
  "format_version": 1,
  "target": {"column": "loan_status", "positive": "Charged Off", "negative": "Fully Paid"},
  "features": [
    {"name": "id", "kind": "drop", "drop_reason": "identifier"},
    {"name": "member_id", "kind": "drop", "drop_reason": "identifier"},
    {"name": "url", "kind": "drop", "drop_reason": "identifier"},
    {"name": "total_pymnt", "kind": "drop", "drop_reason": "recorded after origination"},
    {"name": "recoveries", "kind": "drop", "drop_reason": "recorded after origination"},
    {"name": "loan_amnt", "kind": "numeric", "display": "money"},
    {"name": "term", "kind": "nominal", "levels": ["36 months", "60 months"]},
    {"name": "int_rate", "kind": "numeric", "strip": "%", "display": "percent"},
    {"name": "installment", "kind": "numeric", "display": "money"},
    {"name": "grade", "kind": "ordinal",
     "levels": {"A": 1, "B": 2, "C": 3, "D": 4, "E": 5, "F": 6, "G": 7},
     "reason": "credit grade keeps its risk ordering"},
    {"name": "emp_title", "kind": "nominal",
     "levels": ["education", "healthcare", "management", "technical", "transport",
                "self_employed", "sales", "unknown"],
     "consolidate": {"Teacher": "education", "Registered Nurse": "healthcare",
                     "Manager": "management", "Project Manager": "management",
                     "Engineer": "technical", "Software Developer": "technical",
                     "Truck Driver": "transport", "Driver": "transport",
                     "Owner": "self_employed", "Self Employed": "self_employed",
                     "Sales": "sales", "": "unknown"},
     "reason": "free-text job titles grouped by occupational sector"},
    {"name": "emp_length", "kind": "ordinal",
     "levels": {"n/a": 0, "< 1 year": 1, "1 year": 2, "2 years": 3, "3 years": 4,
                "4 years": 5, "5 years": 6, "6 years": 7, "7 years": 8, "8 years": 9,
                "9 years": 10, "10+ years": 11},
     "reason": "tenure is ordered; n/a coded below the shortest tenure"},
    {"name": "home_ownership", "kind": "nominal", "levels": ["RENT", "MORTGAGE", "OWN", "OTHER"],
     "consolidate": {"NONE": "OTHER"}},
    {"name": "annual_inc", "kind": "numeric", "display": "money"},
    {"name": "verification_status", "kind": "nominal",
     "levels": ["Not Verified", "Verified"],
     "consolidate": {"Source Verified": "Verified"},
     "reason": "income and source verification both confirm income"},
    {"name": "purpose", "kind": "nominal",
     "levels": ["debt_refinancing", "home", "major_purchase", "small_business", "personal", "other"],
     "consolidate": {"debt_consolidation": "debt_refinancing", "credit_card": "debt_refinancing",
                     "home_improvement": "home", "house": "home", "car": "major_purchase",
                     "wedding": "personal", "medical": "personal", "moving": "personal",
                     "vacation": "personal", "educational": "personal",
                     "renewable_energy": "other"},
     "reason": "sparse purposes grouped by economic use of funds"},
    {"name": "addr_state", "kind": "nominal", "levels": ["West", "South", "Northeast", "Midwest"],
     "consolidate": {"CA": "West", "WA": "West", "AZ": "West", "CO": "West", "NV": "West",
                     "TX": "South", "FL": "South", "GA": "South", "VA": "South", "MD": "South",
                     "NY": "Northeast", "NJ": "Northeast", "PA": "Northeast", "MA": "Northeast",
                     "IL": "Midwest", "OH": "Midwest"},
     "reason": "states grouped into census regions"},
    {"name": "dti", "kind": "numeric"},
    {"name": "delinq_2yrs", "kind": "numeric", "display": "integer"},
    {"name": "fico_range_low", "kind": "numeric", "display": "integer"},
    {"name": "inq_last_6mths", "kind": "numeric", "display": "integer"},
    {"name": "mths_since_last_delinq", "kind": "numeric", "display": "integer"},
    {"name": "open_acc", "kind": "numeric", "display": "integer"},
    {"name": "pub_rec", "kind": "numeric", "display": "integer"},
    {"name": "revol_bal", "kind": "numeric", "display": "money"},
    {"name": "revol_util", "kind": "numeric", "strip": "%", "display": "percent"},
    {"name": "total_acc", "kind": "numeric", "display": "integer"},
    {"name": "credit_history_years", "kind": "numeric"},
    {"name": "pub_rec_bankruptcies", "kind": "numeric", "display": "integer"},
    {"name": "policy_code", "kind": "drop", "drop_reason": "constant"},
    {"name": "next_pymnt_d", "kind": "drop", "drop_reason": "always empty"}
  ]
})json";

}  // namespace

FeatureSchema SyntheticLoanSchema() {
  return SchemaFromJson(nlohmann::json::parse(kSchemaJson));
}

std::string GenerateSyntheticLoans(std::size_t rows, std::uint64_t seed) {
  util::Rng rng(seed);
  std::string out = kHeader;
  out.reserve(rows * 260);

  for (std::size_t i = 0; i < rows; ++i) {
    // Latent creditworthiness; partly visible through grade, FICO and
    // utilisation, partly hidden so that no model is perfect.
    const double risk = rng.Normal();
    const double hidden = rng.Normal();

    const double grade_score = 0.8 * risk + 0.6 * rng.Normal();
    static constexpr std::array<double, 6> kCuts{-0.67, 0.13, 0.67, 1.13, 1.48, 1.88};
    const int grade = static_cast<int>(
        std::upper_bound(kCuts.begin(), kCuts.end(), grade_score) - kCuts.begin());
    const double int_rate = std::max(5.4, kGradeRate[grade] + 0.8 * rng.Normal());
    const bool long_term = rng.Uniform() < 0.12 + 0.05 * grade;

    const double loan_amnt =
        std::clamp(std::round(std::exp(9.15 + 0.6 * rng.Normal()) / 25.0) * 25.0, 500.0, 35000.0);
    const double monthly = int_rate / 1200.0;
    const int n_payments = long_term ? 60 : 36;
    const double installment =
        loan_amnt * monthly / (1.0 - std::pow(1.0 + monthly, -n_payments));

    const double annual_inc = std::clamp(
        std::round(std::exp(10.98 - 0.12 * risk + 0.5 * rng.Normal()) / 100.0) * 100.0, 4000.0,
        2000000.0);
    const std::string_view emp_title = kEmpTitle.Draw(rng);
    const std::string_view emp_length = kEmpLength.Draw(rng);
    const std::string_view home = kHome.Draw(rng);
    const std::string_view verification = kVerification.Draw(rng);
    const std::string_view purpose = kPurpose.Draw(rng);
    const std::string_view state = kState.Draw(rng);

    const double dti = std::clamp(13.3 + 3.0 * risk + 5.5 * rng.Normal(), 0.0, 29.99);
    const int delinq = Poisson(rng, 0.12 + 0.06 * std::max(0.0, risk));
    const double fico = std::clamp(
        std::round((712.0 - 22.0 * risk + 18.0 * rng.Normal()) / 5.0) * 5.0, 610.0, 825.0);
    const int inq = Poisson(rng, 0.75 * std::exp(0.35 * risk + 0.2 * hidden));
    const bool has_delinq_history = delinq > 0 || rng.Uniform() < 0.3;
    const int since_delinq =
        has_delinq_history ? static_cast<int>(std::clamp(36.0 + 25.0 * rng.Normal(), 0.0, 120.0))
                           : -1;
    const int open_acc = std::max(1, Poisson(rng, 9.0));
    const int pub_rec = rng.Uniform() < 0.05 + 0.02 * std::max(0.0, risk) ? 1 + Poisson(rng, 0.1) : 0;
    const double revol_bal = std::round(std::exp(8.9 + 1.0 * rng.Normal()));
    const bool util_missing = rng.Uniform() < 0.002;
    const double revol_util = std::clamp(49.0 + 17.0 * risk + 20.0 * rng.Normal(), 0.0, 99.9);
    const int total_acc = open_acc + Poisson(rng, 13.0);
    const double history = std::clamp(13.5 - 1.5 * risk + 6.5 * rng.Normal(), 3.0, 45.0);
    const bool bankrupt_missing = rng.Uniform() < 0.017;
    const int bankruptcies = pub_rec > 0 && rng.Uniform() < 0.8 ? 1 : 0;

    double logit = -2.05 + 0.32 * grade + 0.55 * long_term + 0.55 * hidden;
    logit += -0.45 * std::log(annual_inc / 60000.0);
    logit += inq >= 4 ? 0.7 : 0.0;
    logit += revol_util > 80.0 ? 0.45 : 0.0;
    logit += (dti > 20.0 && revol_util > 70.0) ? 0.8 : 0.0;
    logit += purpose == "small_business" ? 0.75 : 0.0;
    logit += home == "MORTGAGE" ? -0.25 : 0.0;
    logit += emp_length == "n/a" ? 0.45 : 0.0;
    logit += -0.012 * (fico - 712.0);
    logit += bankruptcies > 0 ? 0.35 : 0.0;
    logit += (loan_amnt > 20000.0 && annual_inc < 50000.0) ? 0.6 : 0.0;
    const bool charged_off = rng.Uniform() < Sigmoid(logit);

    const double total_paid = charged_off
                                  ? installment * n_payments * (0.15 + 0.5 * rng.Uniform())
                                  : installment * n_payments;
    const double recoveries = charged_off ? std::round(loan_amnt * 0.08 * rng.Uniform() * 100) / 100
                                          : 0.0;

    out += std::to_string(1000000 + i * 7);
    out += ',' + std::to_string(2000000 + i * 13);
    out += ',' + Num(loan_amnt, 0);
    out += long_term ? ", 60 months" : ", 36 months";
    out += ',' + Num(int_rate, 2) + '%';
    out += ',' + Num(installment, 2);
    out += ',';
    out += kGrades[grade];
    out += ',';
    out += emp_title;
    out += ',';
    out += emp_length;
    out += ',';
    out += home;
    out += ',' + Num(annual_inc, 0);
    out += ',';
    out += verification;
    out += charged_off ? ",Charged Off" : ",Fully Paid";
    out += ',';
    out += purpose;
    out += ',';
    out += state;
    out += ',' + Num(dti, 2);
    out += ',' + std::to_string(delinq);
    out += ',' + Num(fico, 0);
    out += ',' + std::to_string(inq);
    out += ',' + (since_delinq < 0 ? std::string() : std::to_string(since_delinq));
    out += ',' + std::to_string(open_acc);
    out += ',' + std::to_string(pub_rec);
    out += ',' + Num(revol_bal, 0);
    out += ',' + (util_missing ? std::string() : Num(revol_util, 1) + '%');
    out += ',' + std::to_string(total_acc);
    out += ',' + Num(history, 1);
    out += ',' + (bankrupt_missing ? std::string() : std::to_string(bankruptcies));
    out += ',' + Num(total_paid, 2);
    out += ',' + Num(recoveries, 2);
    out += ",1,";
    out += ",https://example.invalid/loans/" + std::to_string(1000000 + i * 7);
    out += '\n';
  }
  return out;
}

}  // namespace rankfaith::data
