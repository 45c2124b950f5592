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

#ifndef RANKFAITH_ERRORS_H_
#define RANKFAITH_ERRORS_H_

#include <stdexcept>
#include <string>

namespace rankfaith {

// Base of every error raised by the library. `kind()` is a stable short tag
// that tests and the CLI can match on without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& message)
      : std::runtime_error(kind + ": " + message), kind_(std::move(kind)) {}

  const std::string& kind() const { return kind_; }

 private:
  std::string kind_;
};

#define RANKFAITH_DEFINE_ERROR(Name)                                \
  class Name : public Error {                                       \
   public:                                                          \
    explicit Name(const std::string& message) : Error(#Name, message) {} \
  }

// data_pipeline
RANKFAITH_DEFINE_ERROR(IoError);
RANKFAITH_DEFINE_ERROR(RaggedRow);
RANKFAITH_DEFINE_ERROR(EmptyTable);
RANKFAITH_DEFINE_ERROR(DegenerateDataset);
RANKFAITH_DEFINE_ERROR(SchemaError);
RANKFAITH_DEFINE_ERROR(MissingColumn);
RANKFAITH_DEFINE_ERROR(UnknownLevel);
RANKFAITH_DEFINE_ERROR(NonBinaryTarget);
RANKFAITH_DEFINE_ERROR(InsufficientClass);
RANKFAITH_DEFINE_ERROR(FormatError);

// baseline_models / attribution_engine
RANKFAITH_DEFINE_ERROR(InvalidArgument);
RANKFAITH_DEFINE_ERROR(DimensionMismatch);
RANKFAITH_DEFINE_ERROR(SingleClass);
RANKFAITH_DEFINE_ERROR(InvalidForest);
RANKFAITH_DEFINE_ERROR(DegenerateSearchSpace);
RANKFAITH_DEFINE_ERROR(ConstantFeatures);

// prompt_protocol
RANKFAITH_DEFINE_ERROR(UnparseableReply);
RANKFAITH_DEFINE_ERROR(DemoCollision);

// llm_gateway
RANKFAITH_DEFINE_ERROR(CassetteMiss);

// eval_harness
RANKFAITH_DEFINE_ERROR(PlanError);

#undef RANKFAITH_DEFINE_ERROR

// Raised by the logistic optimizer when the gradient norm has not fallen
// below tolerance within the iteration budget.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& message, double gradient_norm)
      : Error("ConvergenceError", message), gradient_norm_(gradient_norm) {}
  double gradient_norm() const { return gradient_norm_; }

 private:
  double gradient_norm_;
};

// A failed HTTP exchange. status() is the HTTP status, or 0 when no response
// arrived (connection failure or timeout).
class HttpError : public Error {
 public:
  HttpError(int status, const std::string& message)
      : Error("HttpError", "status " + std::to_string(status) + ": " + message), status_(status) {}
  int status() const { return status_; }
  bool retryable() const { return status_ == 0 || status_ == 429 || status_ >= 500; }

 private:
  int status_;
};

class RetriesExhausted : public Error {
 public:
  RetriesExhausted(int attempts, const std::string& last_error)
      : Error("RetriesExhausted", std::to_string(attempts) + " attempts, last: " + last_error),
        attempts_(attempts),
        last_error_(last_error) {}
  int attempts() const { return attempts_; }
  const std::string& last_error() const { return last_error_; }

 private:
  int attempts_;
  std::string last_error_;
};

class UndersizedCell : public Error {
 public:
  UndersizedCell(std::string cell, std::size_t count, std::size_t required)
      : Error("UndersizedCell", cell + " has " + std::to_string(count) + " members, " +
                                    std::to_string(required) + " required"),
        cell_(std::move(cell)),
        count_(count) {}
  const std::string& cell() const { return cell_; }
  std::size_t count() const { return count_; }

 private:
  std::string cell_;
  std::size_t count_;
};

}  // namespace rankfaith

#endif  // RANKFAITH_ERRORS_H_
