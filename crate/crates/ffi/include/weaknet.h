#ifndef WEAKNET_H
#define WEAKNET_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum {
  WN_MODE_NEEDED = 0,
  WN_MODE_FULL = 1,
} WnMode;

/**
 * Outcome of a single engine step.
 */
typedef enum {
  WN_PROGRESS_IDLE = 0,
  WN_PROGRESS_PROCESSED = 1,
  WN_PROGRESS_STEP_LIMIT = 2,
  WN_PROGRESS_STUCK = 3,
} WnProgress;

/**
 * Outcome of a run. Values match the CLI exit codes.
 */
typedef enum {
  WN_RUN_STATUS_NORMAL = 0,
  WN_RUN_STATUS_STEP_LIMIT = 2,
  WN_RUN_STATUS_STUCK = 3,
} WnRunStatus;

/**
 * Result code of every fallible call.
 */
typedef enum {
  WN_STATUS_OK = 0,
  WN_STATUS_NULL_ARGUMENT = 1,
  WN_STATUS_INVALID_UTF8 = 2,
  WN_STATUS_PARSE_ERROR = 3,
  WN_STATUS_INVALID_SYSTEM = 4,
  WN_STATUS_UNKNOWN_NET = 5,
  WN_STATUS_INVALID_ARGUMENT = 6,
  WN_STATUS_PANIC = 7,
} WnStatus;

/**
 * A loaded net that can be stepped one queue entry at a time.
 */
typedef struct WnEngine WnEngine;

/**
 * A completed run: status, counters, residual configuration and trace.
 */
typedef struct WnResult WnResult;

/**
 * A parsed interaction system.
 */
typedef struct WnSystem WnSystem;

/**
 * Run options. Obtain defaults from [`wn_run_options_default`].
 */
typedef struct {
  WnMode mode;
  /**
   * Negative for no bound.
   */
  int64_t max_steps;
  bool use_shuffle_seed;
  uint64_t shuffle_seed;
  bool strict_rules;
  bool trace;
} WnRunOptions;

typedef struct {
  uint64_t interactions;
  uint64_t indirections;
  uint64_t delegations;
  uint64_t steps;
  uint64_t loops_removed;
  uint64_t cyclic_equations;
  uint64_t observable_terminals;
  uint64_t max_ops_per_step;
} WnStats;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message describing the last failure on this thread. Valid until the
 * next call into this library from the same thread. Never null.
 */
const char *wn_last_error(void);

void wn_string_free(char *s);

/**
 * Parses `.inet` source text. Does not validate; see [`wn_system_validate`].
 */
WnStatus wn_system_parse(const char *src, WnSystem **out);

void wn_system_free(WnSystem *sys);

/**
 * Validates a system. Returns `Ok` when there are no diagnostics and
 * `InvalidSystem` otherwise. When `diagnostics` is non-null it receives a
 * newline-separated list (possibly empty) owned by the caller.
 */
WnStatus wn_system_validate(const WnSystem *sys, char **diagnostics);

/**
 * Number of nets declared in the system.
 */
size_t wn_system_net_count(const WnSystem *sys);

WnRunOptions wn_run_options_default(void);

/**
 * Loads and reduces a net. `net_name` may be null when the system has
 * exactly one net; `options` may be null for defaults.
 */
WnStatus wn_run(const WnSystem *sys,
                const char *net_name,
                const WnRunOptions *options,
                WnResult **out);

void wn_result_free(WnResult *res);

/**
 * Run status; `Normal` for a null handle.
 */
WnRunStatus wn_result_status(const WnResult *res);

WnStatus wn_result_stats(const WnResult *res, WnStats *out);

/**
 * Residual configuration in `.inet` equation syntax, one per line.
 */
char *wn_result_residual(const WnResult *res, bool canon);

/**
 * The JSON stats record for the run.
 */
char *wn_result_stats_json(const WnResult *res);

/**
 * `STEP\tKIND\tDETAIL` lines; empty unless the run was traced.
 */
char *wn_result_trace(const WnResult *res);

/**
 * Loads a net for stepwise reduction.
 */
WnStatus wn_engine_load(const WnSystem *sys,
                        const char *net_name,
                        const WnRunOptions *options,
                        WnEngine **out);

void wn_engine_free(WnEngine *engine);

/**
 * Processes one queue entry and reports what happened in `progress`.
 */
WnStatus wn_engine_step(WnEngine *engine, WnProgress *progress);

WnStatus wn_engine_stats(const WnEngine *engine, WnStats *out);

/**
 * Current configuration of a stepping engine.
 */
char *wn_engine_readback(const WnEngine *engine, bool canon);

/**
 * Number of entries waiting in the engine's needed queue.
 */
size_t wn_engine_queue_len(const WnEngine *engine);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* WEAKNET_H */
