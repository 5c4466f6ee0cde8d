/* tslint:disable */
/* eslint-disable */

/**
 * Dyck path view of a monotone parking function or of an N/E path string.
 *
 * `input` is either a path (`"NNEE"`) or a preference list; a preference
 * list goes through the increasing or decreasing map, whichever applies.
 * With `column > 0` the path is also split at that column.
 */
export function dyck_view(input: string, column: number): string;

/**
 * Lucky table by enumeration. `variant` is `all`, `inc` or `dec`.
 */
export function lucky_table(n: number, variant: string): string;

/**
 * Runs the parking process on a preference list such as `"2 4 2 3 1"`.
 */
export function simulate(prefs: string): string;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly dyck_view: (a: number, b: number, c: number) => [number, number];
    readonly lucky_table: (a: number, b: number, c: number) => [number, number];
    readonly simulate: (a: number, b: number) => [number, number];
    readonly __wbindgen_externrefs: WebAssembly.Table;
    readonly __wbindgen_malloc: (a: number, b: number) => number;
    readonly __wbindgen_realloc: (a: number, b: number, c: number, d: number) => number;
    readonly __wbindgen_free: (a: number, b: number, c: number) => void;
    readonly __wbindgen_start: () => void;
}

export type SyncInitInput = BufferSource | WebAssembly.Module;

/**
 * Instantiates the given `module`, which can either be bytes or
 * a precompiled `WebAssembly.Module`.
 *
 * @param {{ module: SyncInitInput }} module - Passing `SyncInitInput` directly is deprecated.
 *
 * @returns {InitOutput}
 */
export function initSync(module: { module: SyncInitInput } | SyncInitInput): InitOutput;

/**
 * If `module_or_path` is {RequestInfo} or {URL}, makes a request and
 * for everything else, calls `WebAssembly.instantiate` directly.
 *
 * @param {{ module_or_path: InitInput | Promise<InitInput> }} module_or_path - Passing `InitInput` directly is deprecated.
 *
 * @returns {Promise<InitOutput>}
 */
export default function __wbg_init (module_or_path?: { module_or_path: InitInput | Promise<InitInput> } | InitInput | Promise<InitInput>): Promise<InitOutput>;
