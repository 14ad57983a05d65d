/* C interface to the hkcube library. All functions are safe to call from
 * multiple threads on distinct handles; the last error message is kept per
 * thread. Strings returned through out-parameters are owned by the caller
 * and released with hk_string_free. */
#ifndef HKCUBE_H
#define HKCUBE_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define HK_API __declspec(dllexport)
#else
#define HK_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum hk_status {
  HK_OK = 0,
  HK_ERR_INVALID_ELEMENT = 1,
  HK_ERR_INVALID_DIMENSION = 2,
  HK_ERR_INVALID_INDEX = 3,
  HK_ERR_DIMENSION_MISMATCH = 4,
  HK_ERR_NOT_NORMAL = 5,
  HK_ERR_NOT_MEMBER = 6,
  HK_ERR_INVALID_LETTER = 7,
  HK_ERR_BUDGET_EXCEEDED = 8,
  HK_ERR_INTERNAL_INVARIANT = 9,
  HK_ERR_NOT_EQUIVALENCE = 10,
  HK_ERR_NOT_INVARIANT = 11,
  HK_ERR_NOT_MINIMAL = 12,
  HK_ERR_INVALID_VERTEX_SET = 13,
  HK_ERR_TARGET_NOT_ORDER_D = 14,
  HK_ERR_NOT_APPLICABLE = 15,
  HK_ERR_INVALID_PARAMETER = 16,
  HK_ERR_INVALID_SYSTEM = 17,
  HK_ERR_PARSE = 18,
  HK_ERR_TOO_LARGE = 19,
  HK_ERR_NULL_ARGUMENT = 100,
  HK_ERR_UNKNOWN_COMMAND = 101,
  HK_ERR_UNKNOWN = 102
} hk_status;

typedef struct hk_system hk_system;
typedef struct hk_relation hk_relation;

/* Symbolic name of a status, e.g. "BudgetExceeded". */
HK_API const char* hk_status_string(hk_status status);
/* Message of the last failed call on this thread, or "" after success. */
HK_API const char* hk_last_error(void);
HK_API void hk_string_free(char* s);

/* Catalog name such as "rotation:4", "heisenberg:2" or "a5". */
HK_API hk_status hk_system_from_builtin(const char* name, hk_system** out);
/* Text in the config grammar documented in README.md. */
HK_API hk_status hk_system_from_config(const char* text, hk_system** out);
/* A config file path when one exists, otherwise a catalog name. */
HK_API hk_status hk_system_load(const char* name_or_path, hk_system** out);
HK_API void hk_system_free(hk_system* sys);
HK_API size_t hk_system_size(const hk_system* sys);
HK_API size_t hk_system_group_order(const hk_system* sys);
/* Borrowed; valid while the handle lives. */
HK_API const char* hk_system_name(const hk_system* sys);

/* NRP^[d] of the system. */
HK_API hk_status hk_nrp(hk_system* sys, int d, uint64_t budget, hk_relation** out);
HK_API void hk_relation_free(hk_relation* r);
HK_API size_t hk_relation_points(const hk_relation* r);
HK_API int hk_relation_contains(const hk_relation* r, size_t x, size_t y);
HK_API size_t hk_relation_pair_count(const hk_relation* r);
HK_API size_t hk_relation_class_count(const hk_relation* r);
/* Class index of x, classes ordered by smallest member; (size_t)-1 when x
 * is out of range. */
HK_API size_t hk_relation_class_of(const hk_relation* r, size_t x);

/* Runs a command (cubes, nrp, rp, order, tower, axioms, appendix,
 * demo-sturmian). `sys` may be NULL for demo-sturmian. `options_json` may
 * be NULL; see README.md for its keys. On HK_OK, *output holds the report
 * and *verdict is 0 (pass) or 1 (fail). */
HK_API hk_status hk_run(hk_system* sys, const char* command, const char* options_json, char** output,
                        int* verdict);

/* Names of the catalog systems, newline separated. */
HK_API hk_status hk_catalog(char** output);

#ifdef __cplusplus
}
#endif

#endif /* HKCUBE_H */
