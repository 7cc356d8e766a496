#ifndef PLAINCHART_H
#define PLAINCHART_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Result code of every fallible call.
typedef enum PcStatus {
  PC_STATUS_OK = 0,
  PC_STATUS_NULL_POINTER = 1,
  PC_STATUS_INVALID_UTF8 = 2,
  PC_STATUS_INPUT_ERROR = 3,
  PC_STATUS_VERIFICATION_FAILED = 4,
  PC_STATUS_BUDGET_EXCEEDED = 5,
  PC_STATUS_PANIC = 6,
} PcStatus;

// Opaque result of running a scenario.
typedef struct PcOutcome PcOutcome;

// Opaque parsed scenario.
typedef struct PcScenario PcScenario;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Parses a JSON scenario into `*out`.
//
// # Safety
// `json` must be a NUL-terminated string and `out` a valid pointer.
enum PcStatus pc_scenario_from_json(const char *json, struct PcScenario **out);

// Loads a built-in scenario by name into `*out`.
//
// # Safety
// `name` must be a NUL-terminated string and `out` a valid pointer.
enum PcStatus pc_scenario_example(const char *name, struct PcScenario **out);

// Overrides the seed used by sampled projections.
//
// # Safety
// `scenario` must come from this library and not yet be freed.
enum PcStatus pc_scenario_set_seed(struct PcScenario *scenario, uint64_t seed);

// Overrides the Gröbner pair-reduction budget.
//
// # Safety
// `scenario` must come from this library and not yet be freed.
enum PcStatus pc_scenario_set_budget(struct PcScenario *scenario, size_t budget);

// # Safety
// `scenario` must come from this library or be null.
void pc_scenario_free(struct PcScenario *scenario);

// Runs a scenario. An outcome is stored in `*out` whenever the run
// completes, including when a check fails; the status then reports
// `VerificationFailed` or `BudgetExceeded`.
//
// # Safety
// `scenario` must come from this library and `out` be a valid pointer.
enum PcStatus pc_scenario_run(const struct PcScenario *scenario, struct PcOutcome **out);

// 1 if every check passed, 0 otherwise (including a null handle).
//
// # Safety
// `outcome` must come from this library or be null.
int32_t pc_outcome_passed(const struct PcOutcome *outcome);

// Writes the outcome as pretty JSON into `*out`.
//
// # Safety
// `outcome` must come from this library and `out` be a valid pointer.
enum PcStatus pc_outcome_to_json(const struct PcOutcome *outcome, char **out);

// Writes the human-readable report into `*out`.
//
// # Safety
// `outcome` must come from this library and `out` be a valid pointer.
enum PcStatus pc_outcome_to_text(const struct PcOutcome *outcome, char **out);

// # Safety
// `outcome` must come from this library or be null.
void pc_outcome_free(struct PcOutcome *outcome);

// Parses `text` over the comma-separated variables `vars` (grevlex) and
// writes its canonical form into `*out`.
//
// # Safety
// `vars` and `text` must be NUL-terminated strings and `out` a valid pointer.
enum PcStatus pc_polynomial_canonicalize(const char *vars, const char *text, char **out);

// Message of the last failed call on this thread, or null. The pointer is
// valid until the next call into this library on the same thread.
const char *pc_last_error(void);

// # Safety
// `s` must be a string returned by this library or null.
void pc_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* PLAINCHART_H */
