/* tslint:disable */
/* eslint-disable */

/**
 * Runs a suite (`signs`, `retract`, `linfty`, `kks`, `hpl`) on fixture JSON.
 */
export function check(fixture_json: string, suite: string): string;

/**
 * Names of the bundled fixtures, as a JSON array.
 */
export function fixture_names(): string;

/**
 * The bundled fixture's JSON text.
 */
export function fixture_text(name: string): string;

/**
 * Reduces fixture JSON with `linfty`, `hpl` or `both`; `nh = 0` keeps the fixture's truncation.
 */
export function reduce(fixture_json: string, pipeline: string, nh: number): string;

/**
 * Evaluates `P_k` or `I_k` on the fixture's probe words.
 */
export function transfer(fixture_json: string, direction: string, order: number): string;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly check: (a: number, b: number, c: number, d: number) => [number, number];
    readonly fixture_names: () => [number, number];
    readonly fixture_text: (a: number, b: number) => [number, number, number, number];
    readonly reduce: (a: number, b: number, c: number, d: number, e: number) => [number, number];
    readonly transfer: (a: number, b: number, c: number, d: number, e: number) => [number, number];
    readonly __wbindgen_externrefs: WebAssembly.Table;
    readonly __wbindgen_malloc: (a: number, b: number) => number;
    readonly __wbindgen_realloc: (a: number, b: number, c: number, d: number) => number;
    readonly __wbindgen_free: (a: number, b: number, c: number) => void;
    readonly __externref_table_dealloc: (a: number) => void;
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
