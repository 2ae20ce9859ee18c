#ifndef PREFONTO_H
#define PREFONTO_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Query modes accepted by `prefonto_query`.
 */
#define PREFONTO_MODE_INSTANCES 0

#define PREFONTO_MODE_SUBCLASSES 1

#define PREFONTO_MODE_SUPERCLASSES 2

/**
 * Result of every fallible call. Zero is success.
 */
typedef enum PrefontoStatus {
  PREFONTO_STATUS_OK = 0,
  PREFONTO_STATUS_NULL_ARGUMENT = 1,
  PREFONTO_STATUS_INVALID_UTF8 = 2,
  PREFONTO_STATUS_IO = 3,
  /**
   * Turtle syntax error.
   */
  PREFONTO_STATUS_PARSE = 4,
  /**
   * Unsupported vocabulary, undeclared entities or datatype errors.
   */
  PREFONTO_STATUS_INVALID = 5,
  /**
   * A disjointness axiom is violated.
   */
  PREFONTO_STATUS_INCONSISTENT = 6,
  /**
   * Bundled corpus does not match its manifest.
   */
  PREFONTO_STATUS_MANIFEST = 7,
  PREFONTO_STATUS_QUERY_SYNTAX = 8,
  /**
   * Unknown name, type mismatch or an argument outside its domain.
   */
  PREFONTO_STATUS_QUERY = 9,
  /**
   * Malformed JSON argument.
   */
  PREFONTO_STATUS_BAD_ARGUMENT = 10,
  PREFONTO_STATUS_PANIC = 11,
} PrefontoStatus;

/**
 * Materialized knowledge base.
 */
typedef struct PrefontoKb PrefontoKb;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version, static storage. Never null.
 */
const char *prefonto_version(void);

/**
 * Message of the last failed call on this thread, or null. Valid until the
 * next call into the library on this thread.
 */
const char *prefonto_last_error(void);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` is null or a string from this library not yet freed.
 */
void prefonto_string_free(char *s);

/**
 * Loads the bundled corpus, checking hashes and instance counts against its
 * manifest.
 *
 * # Safety
 * `out` is valid for one write.
 */
enum PrefontoStatus prefonto_kb_load_bundled(struct PrefontoKb **out);

/**
 * Loads `count` Turtle files, optionally after the bundled corpus. With
 * `strict` false unsupported vocabulary in the files is kept as annotations.
 *
 * # Safety
 * `paths` points to `count` valid strings (may be null when `count` is 0);
 * `out` is valid for one write.
 */
enum PrefontoStatus prefonto_kb_load_files(const char *const *paths,
                                           size_t count,
                                           bool strict,
                                           bool with_corpus,
                                           struct PrefontoKb **out);

/**
 * Loads one Turtle document from memory.
 *
 * # Safety
 * `text` is a valid string; `out` is valid for one write.
 */
enum PrefontoStatus prefonto_kb_load_turtle(const char *text, bool strict, struct PrefontoKb **out);

/**
 * Releases a handle. Null is ignored.
 *
 * # Safety
 * `kb` is null or a handle not yet freed.
 */
void prefonto_kb_free(struct PrefontoKb *kb);

/**
 * Evaluates a class expression. `*out` receives a JSON array of names,
 * sorted; corpus-namespace names are bare, others are `<iri>`.
 *
 * # Safety
 * `kb` is a live handle; `expr` a valid string; `out` valid for one write.
 */
enum PrefontoStatus prefonto_query(const struct PrefontoKb *kb,
                                   const char *expr,
                                   int32_t mode,
                                   char **out);

/**
 * Methods using `preference` information. `constraints_json` is null or a
 * JSON object mapping problem data properties to booleans, integers or
 * strings. `*out` receives a JSON array of names.
 *
 * # Safety
 * `kb` is a live handle; strings valid or null as documented; `out` valid
 * for one write.
 */
enum PrefontoStatus prefonto_recommend(const struct PrefontoKb *kb,
                                       const char *preference,
                                       const char *constraints_json,
                                       char **out);

/**
 * Classification matrix as CSV. `config_json` may be null when the handle
 * includes the bundled corpus, which then supplies the configuration.
 *
 * # Safety
 * `kb` is a live handle; `config_json` null or valid; `out` valid for one
 * write.
 */
enum PrefontoStatus prefonto_matrix_csv(const struct PrefontoKb *kb,
                                        const char *config_json,
                                        char **out);

/**
 * The `k` most cited methods as a JSON array of `{"name", "citations"}`.
 *
 * # Safety
 * `kb` is a live handle; `out` valid for one write.
 */
enum PrefontoStatus prefonto_top_cited(const struct PrefontoKb *kb, size_t k, char **out);

/**
 * Instance counts of the main classes as a JSON object.
 *
 * # Safety
 * `kb` is a live handle; `out` valid for one write.
 */
enum PrefontoStatus prefonto_stats(const struct PrefontoKb *kb, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* PREFONTO_H */
