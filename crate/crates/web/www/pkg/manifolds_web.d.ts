/* tslint:disable */
/* eslint-disable */

export function spdDistance(a: Float64Array, b: Float64Array): number;

export function spdGeodesicEllipses(a: Float64Array, b: Float64Array, steps: number): Float64Array;

export function sphereBezierCurve(control: Float64Array, samples: number): Float64Array;

export function sphereDeCasteljau(control: Float64Array, t: number): Float64Array;

export function sphereMeans(points: Float64Array): Float64Array;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly spdDistance: (a: number, b: number, c: number, d: number) => [number, number, number];
    readonly spdGeodesicEllipses: (a: number, b: number, c: number, d: number, e: number) => [number, number, number, number];
    readonly sphereBezierCurve: (a: number, b: number, c: number) => [number, number, number, number];
    readonly sphereDeCasteljau: (a: number, b: number, c: number) => [number, number, number, number];
    readonly sphereMeans: (a: number, b: number) => [number, number, number, number];
    readonly __wbindgen_externrefs: WebAssembly.Table;
    readonly __wbindgen_malloc: (a: number, b: number) => number;
    readonly __externref_table_dealloc: (a: number) => void;
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
