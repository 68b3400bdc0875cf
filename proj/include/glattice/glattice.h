#ifndef GLATTICE_GLATTICE_H
#define GLATTICE_GLATTICE_H

/*
 * C interface to the glattice library: finite groups, integral G-lattices,
 * flow lattices of G-graphs, Tate cohomology in degrees -1, 0, 1, resolutions
 * and the built-in verification checks.
 *
 * Conventions:
 *   - Every function returns a glat_status; results come back through out
 *     parameters, which are left untouched on failure.
 *   - Handles are opaque and owned by the caller; release them with the
 *     matching *_free function. Freeing NULL is a no-op.
 *   - Strings returned through char** are NUL-terminated, owned by the
 *     caller and released with glat_string_free. Structured results are JSON.
 *   - After a failure, glat_last_error() describes it. The message is
 *     thread-local and valid until the next call on the same thread.
 *   - Handles are immutable after creation and may be shared across threads.
 */

#if defined(_WIN32)
#define GLAT_API
#elif defined(GLATTICE_BUILDING)
#define GLAT_API __attribute__((visibility("default")))
#else
#define GLAT_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum glat_status {
  GLAT_OK = 0,
  GLAT_ERR_NULL_ARGUMENT = 1,    /* a required pointer argument was NULL */
  GLAT_ERR_INVALID_ARGUMENT = 2, /* out-of-range parameter or unknown name */
  GLAT_ERR_PARSE = 3,            /* malformed spec string */
  GLAT_ERR_PRECONDITION = 4,     /* mathematical precondition violated */
  GLAT_ERR_MISMATCH = 5,         /* objects over different groups or of incompatible shape */
  GLAT_ERR_INTERNAL = 6          /* unexpected failure, including allocation */
} glat_status;

typedef struct glat_group glat_group;
typedef struct glat_lattice glat_lattice;

GLAT_API const char* glat_version(void);
GLAT_API const char* glat_last_error(void);
/* Short name of a status code, e.g. "parse". */
GLAT_API const char* glat_status_name(glat_status status);
GLAT_API void glat_string_free(char* s);

/* Groups. Spec grammar: C:<n> | D:<n> | SD:<n>,<m>,<r> | S:<n> | X(<spec>,<spec>). */
GLAT_API glat_status glat_group_parse(const char* spec, glat_group** out);
GLAT_API void glat_group_free(glat_group* g);
GLAT_API glat_status glat_group_order(const glat_group* g, int* out);
/* {label, order, elements, generators, sigma?, tau?, is_abelian, is_z_group,
 *  subgroup_count, conjugacy_classes_of_subgroups, sylow: [{p, order, cyclic}]} */
GLAT_API glat_status glat_group_info_json(const glat_group* g, char** out);

/* Lattices over a group. Spec grammar: trivial | regular | aug | aug-dual |
 * free:<k> | sign:<elements> | cosets:<elements> | flows:cayley[:<elements>] |
 * flows:complete[:loops] | flows:cosets:<elements>. */
GLAT_API glat_status glat_lattice_parse(const glat_group* g, const char* spec, glat_lattice** out);
GLAT_API void glat_lattice_free(glat_lattice* m);
GLAT_API glat_status glat_lattice_rank(const glat_lattice* m, int* out);
/* {group, rank, generator_actions: [{element, matrix}],
 *  flasque: {holds, failing_subgroup?, obstruction?}, coflasque: {...}} */
GLAT_API glat_status glat_lattice_info_json(const glat_lattice* m, char** out);

/* Flow lattice of a graph spec: cayley(<group>;<elements>) |
 * complete(<group>[/<elements>|/natural];loops=0|1) | cosets(<group>;<elements>).
 * {graph, vertices, edges, components, rank, rank_formula, basis, coflasque} */
GLAT_API glat_status glat_flows_json(const char* graph_spec, char** out);

/* Tate cohomology H^degree(H, M) for degree in {-1, 0, 1}; subgroup spec:
 * whole | trivial | sylow<p> | <elements>.
 * {degree, subgroup, subgroup_order, invariant_factors, group} */
GLAT_API glat_status glat_tate_json(const glat_lattice* m, const char* subgroup_spec, int degree, char** out);

/* kind is "coflasque" or "flasque": an explicit resolution, verified.
 * {kind, lattice_rank, left_rank, middle_rank, right_rank, permutation_witness, verified, maps} */
GLAT_API glat_status glat_resolve_json(const glat_lattice* m, const char* kind, char** out);

/* Certificates of permutation / invertibility:
 * {permutation: {found, reason, basis?}, invertible: {found, subgroups?, coefficients?, verified?}} */
GLAT_API glat_status glat_certify_json(const glat_lattice* m, char** out);

/* Checks. params_json is a JSON object of string values (NULL for none).
 * passed receives 1 when the check passed, 0 otherwise. */
GLAT_API glat_status glat_check_ids_json(char** out);
GLAT_API glat_status glat_check_run(const char* check_id, const char* params_json, int with_elapsed,
                                    char** report_json, int* passed);
/* suite is "quick" or "full"; with_s5 adds the n = 5 symmetric-group check to "full". */
GLAT_API glat_status glat_suite_run(const char* suite, int with_s5, int with_elapsed, char** suite_json, int* passed);

#ifdef __cplusplus
}
#endif

#endif
