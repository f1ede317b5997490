/** Tool selection, the command bar, wireframe labeling, and action buttons. */

import { AppStore, Tool } from "./store.js";

const TOOLS: { tool: Tool; label: string; hint: string }[] = [
  { tool: "select", label: "Select", hint: "click/drag objects; handles rotate and resize" },
  { tool: "draw", label: "Draw", hint: "sketch an area on the floor, then pick its label" },
  { tool: "point", label: "Point", hint: "drop a pin, then tell the command bar what goes there" },
  { tool: "pan", label: "Pan", hint: "drag the canvas" },
];

export class Toolbar {
  readonly root: HTMLElement;
  private labelSelect: HTMLSelectElement;
  private commandInput: HTMLInputElement;

  constructor(
    private readonly store: AppStore,
    doc: Document,
    categories: string[],
  ) {
    this.root = doc.createElement("div");
    this.root.className = "toolbar";

    const tools = doc.createElement("div");
    tools.className = "tools";
    for (const { tool, label, hint } of TOOLS) {
      const button = doc.createElement("button");
      button.textContent = label;
      button.title = hint;
      button.dataset.tool = tool;
      button.addEventListener("click", () => store.setTool(tool));
      tools.appendChild(button);
    }
    this.root.appendChild(tools);

    this.labelSelect = doc.createElement("select");
    this.labelSelect.className = "label-pick";
    for (const category of categories) {
      const option = doc.createElement("option");
      option.value = category;
      option.textContent = category.replace(/_/g, " ");
      this.labelSelect.appendChild(option);
    }
    const markButton = doc.createElement("button");
    markButton.textContent = "Label area";
    markButton.title = "turn the drawn stroke into a labeled wireframe";
    markButton.addEventListener("click", () => void store.finishStroke(this.labelSelect.value));
    const drawGroup = doc.createElement("div");
    drawGroup.className = "draw-group";
    drawGroup.appendChild(this.labelSelect);
    drawGroup.appendChild(markButton);
    this.root.appendChild(drawGroup);

    this.commandInput = doc.createElement("input");
    this.commandInput.className = "command-bar";
    this.commandInput.placeholder = 'say e.g. "generate a wooden chair here" (point first)';
    this.commandInput.addEventListener("keydown", (event) => {
      if ((event as KeyboardEvent).key === "Enter") void this.send();
    });
    const sendButton = doc.createElement("button");
    sendButton.textContent = "Send";
    sendButton.addEventListener("click", () => void this.send());
    const commandGroup = doc.createElement("div");
    commandGroup.className = "command-group";
    commandGroup.appendChild(this.commandInput);
    commandGroup.appendChild(sendButton);
    this.root.appendChild(commandGroup);

    const actions = doc.createElement("div");
    actions.className = "actions";
    const buttons: [string, () => void][] = [
      ["Complete", () => void store.completeScene({ respect_openings: true })],
      ["Wireframes", () => void store.generateWireframes({ respect_openings: true })],
      ["Populate", () => void store.populate()],
      ["Abstract", () => void store.abstract()],
      ["Validate", () => void store.validate()],
      ["Delete", () => void store.deleteSelection()],
    ];
    for (const [label, handler] of buttons) {
      const button = doc.createElement("button");
      button.textContent = label;
      button.addEventListener("click", handler);
      actions.appendChild(button);
    }
    this.root.appendChild(actions);

    store.subscribe(() => this.refresh());
    this.refresh();
  }

  private refresh(): void {
    for (const button of this.root.querySelectorAll<HTMLButtonElement>(".tools button")) {
      button.classList.toggle("active", button.dataset.tool === this.store.tool);
    }
  }

  private async send(): Promise<void> {
    const text = this.commandInput.value.trim();
    if (!text) return;
    const response = await this.store.submitCommand(text);
    if (response) this.commandInput.value = "";
  }
}
