/* tslint:disable */
/* eslint-disable */

/**
 * The electric R-map on `x ≡ ε mod p` in `Z/p^k`, in file format.
 */
export function electric_rmap_text(p: number, k: number, epsilon: number): string;

/**
 * Absolutely incoming/outgoing (n-1)-faces of `I^N` and an order in which
 * the n-faces can be colored.
 */
export function faces(ambient: number, arity: number): string;

/**
 * Twists the electric solution by `c1` for the chosen character and checks
 * the quantum tetrahedron equation on every basis vector.
 */
export function twisted_qte(p: number, k: number, epsilon: number, character: number): string;

/**
 * Parses an R-map file and checks the n-simplex equation both ways.
 */
export function verify_rmap(text: string): string;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly electric_rmap_text: (a: number, b: number, c: number) => [number, number];
    readonly faces: (a: number, b: number) => [number, number];
    readonly twisted_qte: (a: number, b: number, c: number, d: number) => [number, number];
    readonly verify_rmap: (a: number, b: number) => [number, number];
    readonly __wbindgen_externrefs: WebAssembly.Table;
    readonly __wbindgen_free: (a: number, b: number, c: number) => void;
    readonly __wbindgen_malloc: (a: number, b: number) => number;
    readonly __wbindgen_realloc: (a: number, b: number, c: number, d: number) => number;
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
