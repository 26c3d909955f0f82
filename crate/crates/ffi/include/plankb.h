#ifndef PLANKB_H
#define PLANKB_H

/* Generated by cbindgen from src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/*
 Result code of every fallible call.
 */
typedef enum PlankbStatus {
  PLANKB_STATUS_OK = 0,
  PLANKB_STATUS_NULL_ARGUMENT = 1,
  PLANKB_STATUS_INVALID_UTF8 = 2,
  PLANKB_STATUS_PARSE_ERROR = 3,
  PLANKB_STATUS_MAPPING_ERROR = 4,
  PLANKB_STATUS_QUERY_ERROR = 5,
  PLANKB_STATUS_SELECTION_ERROR = 6,
  PLANKB_STATUS_MACRO_ERROR = 7,
  /*
   A Rust panic was caught at the boundary.
   */
  PLANKB_STATUS_INTERNAL_ERROR = 8,
} PlankbStatus;

/*
 Planner selection policy.
 */
typedef enum PlankbPolicy {
  PLANKB_POLICY_ONTOLOGY = 0,
  PLANKB_POLICY_RANDOM = 1,
} PlankbPolicy;

/*
 Parsed PDDL domain.
 */
typedef struct PlankbDomain PlankbDomain;

/*
 In-memory knowledge graph.
 */
typedef struct PlankbGraph PlankbGraph;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Message of the last failed call on this thread, or NULL. The pointer stays
 valid until the next plankb call on the same thread.
 */
const char *plankb_last_error(void);

/*
 Library version as a static string.
 */
const char *plankb_version(void);

/*
 Releases a string returned by this library. NULL is ignored.

 # Safety
 `s` must come from this library and must not be used afterwards.
 */
void plankb_string_free(char *s);

/*
 Parses PDDL domain text.

 # Safety
 `text` must be a NUL-terminated string and `out` a writable pointer.
 */
enum PlankbStatus plankb_domain_parse(const char *text, struct PlankbDomain **out);

/*
 Canonical PDDL text of a domain.

 # Safety
 `domain` must be a live handle and `out` a writable pointer.
 */
enum PlankbStatus plankb_domain_print(const struct PlankbDomain *domain, char **out);

/*
 Number of action schemas, or 0 for NULL.

 # Safety
 `domain` must be NULL or a live handle.
 */
size_t plankb_domain_action_count(const struct PlankbDomain *domain);

/*
 # Safety
 `domain` must be NULL or a handle not yet freed.
 */
void plankb_domain_free(struct PlankbDomain *domain);

/*
 Creates an empty graph.

 # Safety
 `out` must be a writable pointer.
 */
enum PlankbStatus plankb_graph_new(struct PlankbGraph **out);

/*
 Reads a graph from Turtle text.

 # Safety
 `turtle` must be a NUL-terminated string and `out` a writable pointer.
 */
enum PlankbStatus plankb_graph_from_turtle(const char *turtle, struct PlankbGraph **out);

/*
 Serializes a graph as Turtle.

 # Safety
 `graph` must be a live handle and `out` a writable pointer.
 */
enum PlankbStatus plankb_graph_to_turtle(const struct PlankbGraph *graph, char **out);

/*
 Number of triples, or 0 for NULL.

 # Safety
 `graph` must be NULL or a live handle.
 */
size_t plankb_graph_len(const struct PlankbGraph *graph);

/*
 Adds the mapping of a domain (without problems) to a graph.

 # Safety
 `graph` and `domain` must be live handles.
 */
enum PlankbStatus plankb_graph_add_domain(struct PlankbGraph *graph,
                                          const struct PlankbDomain *domain);

/*
 Adds a domain, its problems and stored plans given as an interchange
 JSON document.

 # Safety
 `graph` must be a live handle and `json` a NUL-terminated string.
 */
enum PlankbStatus plankb_graph_add_json(struct PlankbGraph *graph, const char *json);

/*
 Adds `planner,domain,solved,total` competition results.

 # Safety
 `graph` must be a live handle and `csv` a NUL-terminated string.
 */
enum PlankbStatus plankb_graph_add_results_csv(struct PlankbGraph *graph, const char *csv);

/*
 Counts ontology axiom violations. `post_solve` non-zero also checks the
 axioms that only hold once problems have plans.

 # Safety
 `graph` must be a live handle and `count` a writable pointer.
 */
enum PlankbStatus plankb_graph_validate(const struct PlankbGraph *graph,
                                        int32_t post_solve,
                                        size_t *count);

/*
 Answers competency question `id` (`"C1"`..`"C10"`). `args` holds
 `key=value` pairs separated by newlines and may be NULL. The answer is a
 JSON array of objects mapping each variable to its compact text.

 # Safety
 `graph` must be a live handle, `id` a NUL-terminated string, `args` NULL
 or a NUL-terminated string and `out` a writable pointer.
 */
enum PlankbStatus plankb_query(const struct PlankbGraph *graph,
                               const char *id,
                               const char *args,
                               char **out);

/*
 Chooses a planner for `domain` among every planner in the graph. The
 outcome is written as JSON.

 # Safety
 `graph` must be a live handle, `domain` a NUL-terminated string and `out`
 a writable pointer.
 */
enum PlankbStatus plankb_select_planner(const struct PlankbGraph *graph,
                                        const char *domain,
                                        enum PlankbPolicy policy,
                                        uint64_t seed,
                                        char **out);

/*
 Mines adjacent action pairs from the stored plans of `domain` and writes
 the ranked report as JSON. `pddl` may be NULL; when given, chaining is
 checked against it.

 # Safety
 `graph` must be a live handle, `pddl` NULL or a live handle, `domain` a
 NUL-terminated string and `out` a writable pointer.
 */
enum PlankbStatus plankb_mine_macros(const struct PlankbGraph *graph,
                                     const char *domain,
                                     const struct PlankbDomain *pddl,
                                     char **out);

/*
 # Safety
 `graph` must be NULL or a handle not yet freed.
 */
void plankb_graph_free(struct PlankbGraph *graph);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* PLANKB_H */
