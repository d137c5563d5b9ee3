import { ExperimentApi } from "./api.js";
import { ExperimentController } from "./controller.js";
import { Renderer } from "./dom.js";

const root = document.getElementById("app");
if (!root) throw new Error("missing #app mount point");

const controller = new ExperimentController(new ExperimentApi(""));
const renderer = new Renderer(root, controller);

controller.onChange((view) => renderer.render(view));
renderer.render(controller.view);
