import { readFileSync } from "node:fs";

export function fixture(name: string): string {
  return readFileSync(new URL(`./fixtures/${name}`, import.meta.url), "utf-8");
}

export function jsonFixture<T>(name: string): T {
  return JSON.parse(fixture(name)) as T;
}

/** (status -> algorithms in order) extracted from rendered panel markup. */
export function panelGroups(html: string): Map<string, string[]> {
  const groups = new Map<string, string[]>();
  const sectionRe = /<section class="verdict-group" data-status="(\w+)">([\s\S]*?)<\/section>/g;
  for (const match of html.matchAll(sectionRe)) {
    const algorithms = [...match[2]!.matchAll(/data-algorithm="([^"]+)"/g)].map(
      (m) => m[1]!,
    );
    groups.set(match[1]!, algorithms);
  }
  return groups;
}
