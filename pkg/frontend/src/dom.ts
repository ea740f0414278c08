/** Small DOM helpers shared by the panels. */

/** Build a DOM subtree from a template string and return its root element. */
export function fromTemplate(html: string): HTMLElement {
  const holder = document.createElement("template");
  holder.innerHTML = html.trim();
  const node = holder.content.firstElementChild;
  if (!(node instanceof HTMLElement)) {
    throw new Error("template has no root element");
  }
  return node;
}

/** Find the element carrying a data-role attribute, failing loudly. */
export function roleOf<T extends HTMLElement>(root: ParentNode, role: string): T {
  const node = root.querySelector(`[data-role="${role}"]`);
  if (!node) throw new Error(`missing element with data-role "${role}"`);
  return node as T;
}

export function clearChildren(node: Element): void {
  while (node.firstChild) node.removeChild(node.firstChild);
}
